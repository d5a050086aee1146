#include "fringescan/hdr/retrieval.hpp"

#include <unordered_map>
#include <vector>

#include "fringescan/phase/solve.hpp"

namespace fringescan {
namespace {

// Survivor schedule and coefficients for one elimination pattern. Cached per
// stack solve: a 12-step stack has at most 2^12 patterns, and pixels sharing
// a pattern share the exact arithmetic.
struct MaskedSystem {
  bool usable = false;
  CoefficientMatrix coeffs;
  std::vector<double> deltas;
};

class EliminationCache {
public:
  explicit EliminationCache(const std::vector<double>& shifts) : shifts_(shifts) {}

  // mask bit n set = sample n eliminated.
  const MaskedSystem& get(std::uint64_t mask) {
    auto [it, inserted] = cache_.try_emplace(mask);
    if (inserted) {
      ShiftSchedule sub;
      for (std::size_t n = 0; n < shifts_.size(); ++n)
        if (!((mask >> n) & 1)) sub.deltas.push_back(shifts_[n]);
      if (sub.size() >= HdrConfig::min_valid) {
        if (auto coeffs = try_build_coefficients(sub)) {
          it->second.usable = true;
          it->second.coeffs = *coeffs;
          it->second.deltas = std::move(sub.deltas);
        }
      }
    }
    return it->second;
  }

private:
  const std::vector<double>& shifts_;
  std::unordered_map<std::uint64_t, MaskedSystem> cache_;
};

void trig_tables(const std::vector<double>& shifts, std::vector<double>& cos_t,
                 std::vector<double>& sin_t) {
  cos_t.resize(shifts.size());
  sin_t.resize(shifts.size());
  for (std::size_t n = 0; n < shifts.size(); ++n) {
    cos_t[n] = std::cos(shifts[n]);
    sin_t[n] = std::sin(shifts[n]);
  }
}

}  // namespace

std::optional<double> solve_pixel(std::span<const double> samples,
                                  std::span<const double> deltas, double sat_thr) {
  if (samples.size() != deltas.size())
    fail(errc::dimension_mismatch, "sample/shift length mismatch");
  const std::size_t n = samples.size();
  if (n < HdrConfig::min_valid || n > 64) return std::nullopt;

  double survivors[64], surviving_deltas[64];
  std::size_t kept = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (samples[k] < sat_thr) {
      survivors[kept] = samples[k];
      surviving_deltas[kept] = deltas[k];
      ++kept;
    }

  if (kept == n) {
    ShiftSchedule sched{std::vector<double>(deltas.begin(), deltas.end())};
    if (sched.is_uniform()) return solve_standard(samples);
    auto coeffs = try_build_coefficients(sched);
    if (!coeffs) return std::nullopt;
    return solve_generalized(samples, deltas, *coeffs);
  }

  if (kept < HdrConfig::min_valid) return std::nullopt;
  ShiftSchedule sub{std::vector<double>(surviving_deltas, surviving_deltas + kept)};
  auto coeffs = try_build_coefficients(sub);
  if (!coeffs) return std::nullopt;
  return solve_generalized({survivors, kept}, {surviving_deltas, kept}, *coeffs);
}

template <class T>
PhaseMap gen_phase_shifting(const BasicFringeStack<T>& stack, const SaturationMap& satmap,
                            const HdrConfig& config) {
  stack.validate();
  config.validate();
  if (!satmap.same_size(stack.samples.front()))
    fail(errc::dimension_mismatch, "saturation map dimensions differ from stack");

  const int n = stack.sample_count();
  const int w = stack.width(), h = stack.height();
  const ShiftSchedule sched{stack.shifts};
  const bool uniform = sched.is_uniform();
  std::vector<double> cos_t, sin_t;
  trig_tables(stack.shifts, cos_t, sin_t);
  CoefficientMatrix full;
  if (!uniform) full = build_coefficients(sched);  // degenerate stack schedule aborts

  const double thr = static_cast<double>(config.sat_thr);
  EliminationCache cache(stack.shifts);
  PhaseMap out = PhaseMap::make(w, h, PhaseKind::wrapped, stack.period);
  double samp[64], surv[64];

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      for (int k = 0; k < n; ++k) samp[k] = static_cast<double>(stack.samples[k].at(x, y));
      std::optional<double> phi;
      if (satmap.at(x, y) == 0) {
        phi = uniform ? solve_standard({samp, static_cast<std::size_t>(n)}, cos_t, sin_t)
                      : solve_generalized({samp, static_cast<std::size_t>(n)}, stack.shifts, full);
      } else {
        // Eliminated samples are never read past this point, so any change
        // to a saturated value cannot influence the result.
        std::uint64_t mask = 0;
        std::size_t kept = 0;
        for (int k = 0; k < n; ++k) {
          if (samp[k] >= thr)
            mask |= std::uint64_t{1} << k;
          else
            surv[kept++] = samp[k];
        }
        if (kept < HdrConfig::min_valid) continue;
        const MaskedSystem& sys = cache.get(mask);
        if (!sys.usable) continue;
        phi = solve_generalized({surv, kept}, sys.deltas, sys.coeffs);
      }
      if (phi) out.set(x, y, *phi);
    }
  return out;
}

template <class T>
PhaseMap naive_phase_shifting(const BasicFringeStack<T>& stack) {
  stack.validate();
  const int n = stack.sample_count();
  const ShiftSchedule sched{stack.shifts};
  const bool uniform = sched.is_uniform();
  std::vector<double> cos_t, sin_t;
  trig_tables(stack.shifts, cos_t, sin_t);
  CoefficientMatrix full;
  if (!uniform) full = build_coefficients(sched);

  PhaseMap out = PhaseMap::make(stack.width(), stack.height(), PhaseKind::wrapped, stack.period);
  double samp[64];
  for (int y = 0; y < stack.height(); ++y)
    for (int x = 0; x < stack.width(); ++x) {
      for (int k = 0; k < n; ++k) samp[k] = static_cast<double>(stack.samples[k].at(x, y));
      auto phi = uniform
                     ? solve_standard({samp, static_cast<std::size_t>(n)}, cos_t, sin_t)
                     : solve_generalized({samp, static_cast<std::size_t>(n)}, stack.shifts, full);
      if (phi) out.set(x, y, *phi);
    }
  return out;
}

template PhaseMap gen_phase_shifting<std::uint8_t>(const BasicFringeStack<std::uint8_t>&,
                                                   const SaturationMap&, const HdrConfig&);
template PhaseMap gen_phase_shifting<double>(const BasicFringeStack<double>&,
                                             const SaturationMap&, const HdrConfig&);
template PhaseMap naive_phase_shifting<std::uint8_t>(const BasicFringeStack<std::uint8_t>&);
template PhaseMap naive_phase_shifting<double>(const BasicFringeStack<double>&);

}  // namespace fringescan
