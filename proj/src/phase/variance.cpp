#include "fringescan/phase/variance.hpp"

#include "fringescan/core/error.hpp"

namespace fringescan {

double predict_phase_variance(const NoiseModel& model) {
  if (!(model.sigma > 0) || model.steps <= 0 || !(model.frequency > 0) || !(model.modulation > 0))
    fail(errc::bad_config, "noise model fields must be strictly positive");
  double fb = model.frequency * model.modulation;
  return 2.0 * model.sigma * model.sigma / (model.steps * fb * fb);
}

}  // namespace fringescan
