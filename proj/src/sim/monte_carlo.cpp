#include "fringescan/sim/monte_carlo.hpp"

#include <cmath>

#include "fringescan/phase/solve.hpp"
#include "fringescan/sim/rng.hpp"

namespace fringescan {

std::vector<LevelVariance> monte_carlo_variance(const ProjectorModel& proj,
                                                const SensorModel& sensor, long long trials,
                                                std::uint64_t seed) {
  proj.validate();
  sensor.validate();
  if (trials < 10000) fail(errc::bad_config, "monte carlo needs at least 10000 trials");

  std::vector<LevelVariance> out;
  out.reserve(proj.periods.size());
  const double per_dense = proj.periods.back();

  for (std::size_t level = 0; level < proj.periods.size(); ++level) {
    const int steps = proj.steps[level];
    const double per = proj.periods[level];
    const double alpha = proj.contrast(per);

    std::vector<double> cos_table(static_cast<std::size_t>(steps));
    std::vector<double> sin_table(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n) {
      cos_table[static_cast<std::size_t>(n)] = std::cos(kTwoPi * n / steps);
      sin_table[static_cast<std::size_t>(n)] = std::sin(kTwoPi * n / steps);
    }

    // Streams 2 (sample noise) and 3 (true phase) stay clear of the
    // renderer's view keys 0 and 1.
    CounterRng phase_rng{CounterRng::derive_key(seed, 3, level, 0)};
    std::vector<CounterRng> noise_rng;
    noise_rng.reserve(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n)
      noise_rng.push_back(
          CounterRng{CounterRng::derive_key(seed, 2, level, static_cast<std::uint64_t>(n))});

    double sum = 0, sum_sq = 0;
    std::vector<double> samples(static_cast<std::size_t>(steps));
    for (long long t = 0; t < trials; ++t) {
      const auto counter = static_cast<std::uint64_t>(t);
      double truth = kPi - kTwoPi * phase_rng.uniform(counter);
      for (int n = 0; n < steps; ++n) {
        double value =
            proj.i0 * (1.0 + alpha * (cos_table[static_cast<std::size_t>(n)] * std::cos(truth) -
                                      sin_table[static_cast<std::size_t>(n)] * std::sin(truth)));
        if (sensor.sigma > 0)
          value += sensor.sigma * noise_rng[static_cast<std::size_t>(n)].normal(counter);
        samples[static_cast<std::size_t>(n)] = value;
      }
      auto est = solve_standard(samples, cos_table, sin_table);
      if (!est) fail(errc::internal, "monte carlo trial lost all modulation");
      double err = wrap_phase(*est - truth);
      sum += err;
      sum_sq += err * err;
    }

    double mean = sum / static_cast<double>(trials);
    double var = sum_sq / static_cast<double>(trials) - mean * mean;
    double scale = per / per_dense;
    out.push_back({per, steps, proj.i0 * alpha, var, var * scale * scale});
  }
  return out;
}

}  // namespace fringescan
