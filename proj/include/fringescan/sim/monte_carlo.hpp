#pragma once

#include <cstdint>
#include <vector>

#include "fringescan/sim/render.hpp"

namespace fringescan {

// Empirical estimator statistics for one frequency level.
struct LevelVariance {
  double period = 0;
  int steps = 0;
  double modulation = 0;           // effective amplitude I0 * alpha(period)
  double variance = 0;             // Var(wrap(phi_hat - Phi)) on the level's own scale
  double equivalent_variance = 0;  // variance * (period / densest period)^2
};

// Pure estimator Monte Carlo: per level, draws a uniform true phase in
// (-pi, pi], synthesizes the projector's shifted samples with additive
// Gaussian noise (no clamping, no quantization), solves, and accumulates
// the wrapped error. Deterministic for a fixed seed; trials must be at
// least 10^4 so the +-10% comparison against the predicted variance is
// meaningful.
std::vector<LevelVariance> monte_carlo_variance(const ProjectorModel& proj,
                                                const SensorModel& sensor, long long trials,
                                                std::uint64_t seed);

}  // namespace fringescan
