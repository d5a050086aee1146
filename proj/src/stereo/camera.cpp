#include "fringescan/stereo/camera.hpp"

#include <cmath>

#include "fringescan/core/error.hpp"

namespace fringescan {

void AffineCamera::validate() const {
  const double* a = p[0];
  const double* b = p[1];
  double cx = a[1] * b[2] - a[2] * b[1];
  double cy = a[2] * b[0] - a[0] * b[2];
  double cz = a[0] * b[1] - a[1] * b[0];
  double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
  double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  if (!(cross > 1e-9 * na * nb))
    fail(errc::geometry_error, "camera projection rows are linearly dependent");
}

}  // namespace fringescan
