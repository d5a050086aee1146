#include "fringescan/core/phase_map.hpp"

namespace fringescan {

PhaseMap PhaseMap::make(int width, int height, PhaseKind kind, double period) {
  PhaseMap map;
  map.values = ImageF64(width, height, std::numeric_limits<double>::quiet_NaN());
  map.valid = ImageU8(width, height, 0);
  map.kind = kind;
  map.period = period;
  return map;
}

std::size_t PhaseMap::valid_count() const {
  std::size_t n = 0;
  const std::uint8_t* v = valid.data();
  for (std::size_t i = 0; i < valid.pixel_count(); ++i) n += v[i] != 0;
  return n;
}

double PhaseMap::valid_fraction() const {
  if (valid.pixel_count() == 0) return 0.0;
  return static_cast<double>(valid_count()) / static_cast<double>(valid.pixel_count());
}

bool PhaseMap::wrapped_range_ok() const {
  if (kind != PhaseKind::wrapped) return true;
  for (int y = 0; y < height(); ++y)
    for (int x = 0; x < width(); ++x)
      if (is_valid(x, y)) {
        double v = values.at(x, y);
        if (!(v > -kPi && v <= kPi)) return false;
      }
  return true;
}

}  // namespace fringescan
