#pragma once

#include <array>

namespace fringescan {

// Affine (telecentric) camera: pixel = p * (x, y, z, 1), world in mm.
struct AffineCamera {
  double p[2][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}};

  std::array<double, 2> project(double x, double y, double z) const {
    return {p[0][0] * x + p[0][1] * y + p[0][2] * z + p[0][3],
            p[1][0] * x + p[1][1] * y + p[1][2] * z + p[1][3]};
  }

  // The upper-left 2x3 block must have rank 2 (independent pixel axes).
  void validate() const;
};

}  // namespace fringescan
