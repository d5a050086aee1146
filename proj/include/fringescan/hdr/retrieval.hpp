#pragma once

#include <optional>
#include <span>

#include "fringescan/core/phase_map.hpp"
#include "fringescan/hdr/saturation.hpp"

namespace fringescan {

// Saturation-eliminating per-pixel solve: samples at or above sat_thr are
// removed together with their shifts before any arithmetic touches them.
// Unsaturated pixels on a uniform schedule take the standard fast path;
// fewer than 3 survivors, a degenerate survivor schedule, or zero
// modulation yield nullopt.
std::optional<double> solve_pixel(std::span<const double> samples,
                                  std::span<const double> deltas, double sat_thr);

// Image-wide saturation-tolerant wrapped-phase retrieval. satmap must have
// been computed from the same stack and config. Per-pixel failures become
// invalid mask entries; the call itself never fails on pixel data.
template <class T>
PhaseMap gen_phase_shifting(const BasicFringeStack<T>& stack, const SaturationMap& satmap,
                            const HdrConfig& config);

// Reference processing that ignores saturation: every sample enters the
// solve. Used for ripple comparisons against the eliminating path.
template <class T>
PhaseMap naive_phase_shifting(const BasicFringeStack<T>& stack);

}  // namespace fringescan
