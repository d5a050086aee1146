#include "fringescan/phase/schedule.hpp"

#include "fringescan/core/error.hpp"
#include "fringescan/core/phase_map.hpp"

namespace fringescan {

ShiftSchedule ShiftSchedule::uniform(int steps) {
  if (steps < 3) fail(errc::insufficient_samples, "insufficient samples: need at least 3 shifts");
  ShiftSchedule s;
  s.deltas.resize(static_cast<std::size_t>(steps));
  for (int n = 0; n < steps; ++n) s.deltas[n] = kTwoPi * n / steps;
  return s;
}

bool ShiftSchedule::is_uniform() const {
  if (size() < 3) return false;
  for (int n = 0; n < size(); ++n)
    if (deltas[n] != kTwoPi * n / size()) return false;
  return true;
}

}  // namespace fringescan
