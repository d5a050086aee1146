#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fringescan/core/phase_map.hpp"
#include "fringescan/hdr/saturation.hpp"

namespace fringescan {

// One frequency level: the captured stack plus its saturation counts.
struct MultiFreqLevel {
  FringeStack stack;
  SaturationMap satmap;
};

// Levels ordered loosest to densest period. Level 1's period must span the
// full field in projector pixels so its wrapped phase is already absolute;
// that is a capture-side contract this container cannot verify.
struct MultiFreqSet {
  std::vector<MultiFreqLevel> levels;

  void validate() const;  // M >= 1, strictly decreasing periods, equal dims
  std::vector<double> periods() const;
  int level_count() const { return static_cast<int>(levels.size()); }
};

MultiFreqSet make_multi_freq_set(std::vector<FringeStack> stacks, const HdrConfig& config);

// Fringe-order recovery, loosest level first:
//   k^m = round[(Phi^{m-1} per^{m-1}/per^m - phi^m)/2pi],  Phi^m = phi^m + 2pi k^m.
// round is half-away-from-zero. A pixel stays valid at level m only if it
// is valid there and at level m-1 (the recurrence needs Phi^{m-1}).
std::vector<PhaseMap> temporal_unwrap(const std::vector<PhaseMap>& wrapped,
                                      const std::vector<double>& periods);

// Observability of the replacement cascade. The tallies follow the pure
// oversaturation-mask algebra (they partition the densest level's
// oversaturated set); source_level records what was actually written,
// including fills that fell back past a broken unwrap chain.
struct FusionReport {
  std::vector<long long> filled_from;  // [m-1] = pixels sourced from level m
  long long unrecoverable = 0;         // oversaturated at every level
  long long dense_oversaturated = 0;   // oversaturated at the densest level
  Image<std::int8_t> source_level;     // 1-based level per pixel, -1 = none

  std::string to_text() const;
  std::string to_kv() const;
};

// HDR fusion on the densest level's phase scale: each pixel takes
// Phi^m * per^m/per^M for the densest level m at which it is not
// over-saturated (and whose unwrap chain is intact); pixels over-saturated
// at every level are invalid.
std::pair<PhaseMap, FusionReport> multi_freq_hdr(const MultiFreqSet& set,
                                                 const std::vector<PhaseMap>& wrapped,
                                                 const HdrConfig& config);

// Same fusion driven by precomputed per-level saturation counts instead of
// the raw stacks; lets file-based stages fuse without reloading images.
std::pair<PhaseMap, FusionReport> fuse_phase_maps(const std::vector<SaturationMap>& satcounts,
                                                  const std::vector<int>& sample_counts,
                                                  const std::vector<double>& periods,
                                                  const std::vector<PhaseMap>& wrapped,
                                                  const HdrConfig& config);

}  // namespace fringescan
