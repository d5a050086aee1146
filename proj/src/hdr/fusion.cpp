#include "fringescan/hdr/fusion.hpp"

#include <charconv>
#include <cmath>

namespace fringescan {

void MultiFreqSet::validate() const {
  if (levels.empty()) fail(errc::insufficient_samples, "multi-frequency set needs at least 1 level");
  for (const auto& level : levels) {
    level.stack.validate();
    if (!level.satmap.same_size(level.stack.samples.front()))
      fail(errc::dimension_mismatch, "saturation map dimensions differ from stack");
  }
  for (std::size_t m = 1; m < levels.size(); ++m) {
    if (!(levels[m].stack.period < levels[m - 1].stack.period))
      fail(errc::bad_config, "periods must strictly decrease from loosest to densest");
    if (levels[m].stack.width() != levels[0].stack.width() ||
        levels[m].stack.height() != levels[0].stack.height())
      fail(errc::dimension_mismatch, "dimension mismatch across levels");
  }
}

std::vector<double> MultiFreqSet::periods() const {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& level : levels) out.push_back(level.stack.period);
  return out;
}

MultiFreqSet make_multi_freq_set(std::vector<FringeStack> stacks, const HdrConfig& config) {
  MultiFreqSet set;
  set.levels.reserve(stacks.size());
  for (auto& stack : stacks) {
    MultiFreqLevel level;
    level.satmap = sat_map(stack, config);
    level.stack = std::move(stack);
    set.levels.push_back(std::move(level));
  }
  set.validate();
  return set;
}

std::vector<PhaseMap> temporal_unwrap(const std::vector<PhaseMap>& wrapped,
                                      const std::vector<double>& periods) {
  if (wrapped.empty() || wrapped.size() != periods.size())
    fail(errc::dimension_mismatch, "wrapped map count differs from period count");
  for (std::size_t m = 1; m < wrapped.size(); ++m) {
    if (!wrapped[m].values.same_size(wrapped[0].values))
      fail(errc::dimension_mismatch, "dimension mismatch across levels");
    if (!(periods[m] < periods[m - 1]))
      fail(errc::bad_config, "periods must strictly decrease from loosest to densest");
  }

  const int w = wrapped[0].width(), h = wrapped[0].height();
  std::vector<PhaseMap> out;
  out.reserve(wrapped.size());

  PhaseMap base = PhaseMap::make(w, h, PhaseKind::unwrapped, periods[0]);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (wrapped[0].is_valid(x, y)) base.set(x, y, wrapped[0].values.at(x, y));
  out.push_back(std::move(base));

  for (std::size_t m = 1; m < wrapped.size(); ++m) {
    PhaseMap level = PhaseMap::make(w, h, PhaseKind::unwrapped, periods[m]);
    const double ratio = periods[m - 1] / periods[m];
    const PhaseMap& prev = out[m - 1];
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!wrapped[m].is_valid(x, y) || !prev.is_valid(x, y)) continue;
        double phi = wrapped[m].values.at(x, y);
        double k = std::round((prev.values.at(x, y) * ratio - phi) / kTwoPi);
        level.set(x, y, phi + kTwoPi * k);
      }
    out.push_back(std::move(level));
  }
  return out;
}

namespace {

void append_kv(std::string& s, const std::string& key, long long value) {
  s += key;
  s.push_back('=');
  s += std::to_string(value);
  s.push_back('\n');
}

}  // namespace

std::string FusionReport::to_text() const {
  std::string s = "fusion summary\n";
  s += "  densest-level oversaturated pixels: " + std::to_string(dense_oversaturated) + "\n";
  for (std::size_t m = 0; m < filled_from.size(); ++m) {
    s += "  filled from level " + std::to_string(m + 1) + ": " +
         std::to_string(filled_from[m]);
    s += (m + 1 == filled_from.size()) ? " (not replaced)\n" : " (replaced)\n";
  }
  s += "  unrecoverable (oversaturated everywhere): " + std::to_string(unrecoverable) + "\n";
  return s;
}

std::string FusionReport::to_kv() const {
  std::string s;
  append_kv(s, "levels", static_cast<long long>(filled_from.size()));
  append_kv(s, "dense_oversaturated", dense_oversaturated);
  append_kv(s, "unrecoverable", unrecoverable);
  for (std::size_t m = 0; m < filled_from.size(); ++m)
    append_kv(s, "filled_from_level_" + std::to_string(m + 1), filled_from[m]);
  return s;
}

std::pair<PhaseMap, FusionReport> multi_freq_hdr(const MultiFreqSet& set,
                                                 const std::vector<PhaseMap>& wrapped,
                                                 const HdrConfig& config) {
  set.validate();
  std::vector<SaturationMap> satcounts;
  std::vector<int> sample_counts;
  satcounts.reserve(set.levels.size());
  sample_counts.reserve(set.levels.size());
  for (const auto& level : set.levels) {
    satcounts.push_back(level.satmap);
    sample_counts.push_back(level.stack.sample_count());
  }
  return fuse_phase_maps(satcounts, sample_counts, set.periods(), wrapped, config);
}

std::pair<PhaseMap, FusionReport> fuse_phase_maps(const std::vector<SaturationMap>& satcounts,
                                                  const std::vector<int>& sample_counts,
                                                  const std::vector<double>& periods,
                                                  const std::vector<PhaseMap>& wrapped,
                                                  const HdrConfig& config) {
  config.validate();
  const int M = static_cast<int>(satcounts.size());
  if (M == 0) fail(errc::insufficient_samples, "multi-frequency set needs at least 1 level");
  if (static_cast<int>(wrapped.size()) != M || static_cast<int>(sample_counts.size()) != M ||
      static_cast<int>(periods.size()) != M)
    fail(errc::dimension_mismatch, "wrapped map count differs from level count");
  for (int m = 0; m < M; ++m)
    if (!satcounts[static_cast<std::size_t>(m)].same_size(wrapped[static_cast<std::size_t>(m)].values))
      fail(errc::dimension_mismatch, "saturation map dimensions differ from phase maps");

  const std::vector<PhaseMap> unwrapped = temporal_unwrap(wrapped, periods);
  const int w = wrapped[0].width(), h = wrapped[0].height();

  std::vector<IndexMap> oversat;
  oversat.reserve(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m)
    oversat.push_back(oversaturation_map(satcounts[static_cast<std::size_t>(m)],
                                         sample_counts[static_cast<std::size_t>(m)]));

  FusionReport report;
  report.filled_from.assign(static_cast<std::size_t>(M), 0);
  report.source_level = Image<std::int8_t>(w, h, -1);

  PhaseMap fused = PhaseMap::make(w, h, PhaseKind::equivalent, periods.back());
  const double dense_period = periods.back();

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // Mask algebra: the densest non-oversaturated level, independent of
      // chain validity, drives the report tallies.
      int mask_choice = -1;
      bool oversat_dense = oversat.back().at(x, y) != 0;
      for (int m = M - 1; m >= 0; --m)
        if (!oversat[static_cast<std::size_t>(m)].at(x, y)) {
          mask_choice = m;
          break;
        }
      if (oversat_dense) report.dense_oversaturated++;
      if (mask_choice < 0)
        report.unrecoverable++;
      else
        report.filled_from[static_cast<std::size_t>(mask_choice)]++;

      // Actual fill: additionally requires an intact unwrap chain.
      for (int m = mask_choice; m >= 0; --m) {
        if (oversat[static_cast<std::size_t>(m)].at(x, y)) continue;
        if (!unwrapped[static_cast<std::size_t>(m)].is_valid(x, y)) continue;
        double scale = periods[static_cast<std::size_t>(m)] / dense_period;
        fused.set(x, y, unwrapped[static_cast<std::size_t>(m)].values.at(x, y) * scale);
        report.source_level.at(x, y) = static_cast<std::int8_t>(m + 1);
        break;
      }
    }
  return {std::move(fused), std::move(report)};
}

}  // namespace fringescan
