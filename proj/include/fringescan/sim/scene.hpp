#pragma once

#include <string>
#include <vector>

namespace fringescan {

// Synthetic surface: height z(x, y) in mm and reflectance gain r(x, y) on a
// regular grid covering [0, extent_x] x [0, extent_y] mm. Values between
// grid nodes interpolate bilinearly; queries outside clamp to the border.
struct Scene {
  int nx = 0, ny = 0;
  double extent_x = 0, extent_y = 0;
  std::vector<double> height;       // row-major ny*nx, mm
  std::vector<double> reflectance;  // dimensionless gain; > 1 models shiny patches

  void validate() const;  // >= 16x16 grid, finite fields, r >= 0
  double height_at(double x, double y) const;
  double reflectance_at(double x, double y) const;
  double height_min() const;
  double height_max() const;

  // Built-in test surfaces on a 256x256 grid over 4x4 mm:
  //   "plane"              z = 0.1*x - 0.2, r = 1
  //   "gaussian-bump"      smooth bump, r = 1
  //   "shiny-disk-on-ramp" plane with a reflectance-3 disk (soft edge)
  static Scene built_in(const std::string& name);
  static bool is_built_in(const std::string& name);
};

// Plain-text scene file: header "fringescan-scene <nx> <ny> <extent_x>
// <extent_y>", then row-major height then reflectance rasters.
Scene read_scene(const std::string& path);
void write_scene(const Scene& scene, const std::string& path);

}  // namespace fringescan
