#pragma once

#include <string>

#include "fringescan/core/point_cloud.hpp"

namespace fringescan {

// ASCII PLY 1.0 with float32 x,y,z vertex properties. Coordinates are
// narrowed to float and printed in shortest round-trip form, so the
// serialized payload reads back bit-exactly (pixel provenance is not stored).
void write_point_cloud(const PointCloud& cloud, const std::string& path);
PointCloud read_point_cloud(const std::string& path);

}  // namespace fringescan
