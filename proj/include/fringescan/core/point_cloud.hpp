#pragma once

#include <vector>

namespace fringescan {

// World-space point in millimeters with its source pixel in the left image.
struct CloudPoint {
  double x = 0, y = 0, z = 0;
  int u = 0, v = 0;        // provenance: left-image pixel
  double residual = 0;     // reprojection residual, px
};

struct PointCloud {
  std::vector<CloudPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

}  // namespace fringescan
