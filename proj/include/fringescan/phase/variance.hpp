#pragma once

namespace fringescan {

// Additive-Gaussian noise model of a phase-shifted acquisition.
struct NoiseModel {
  double sigma = 0;       // noise standard deviation, counts
  int steps = 0;          // phase-shifting step count N_S
  double frequency = 0;   // dimensionless fringe count across the field
  double modulation = 0;  // fringe amplitude B, counts
};

// Predicted phase error variance 2*sigma^2 / (N_S * f^2 * B^2), radians^2,
// on the field-normalized phase scale (f converts between a level's own
// wrapped-phase scale and the common object scale).
double predict_phase_variance(const NoiseModel& model);

}  // namespace fringescan
