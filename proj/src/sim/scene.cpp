#include "fringescan/sim/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "fringescan/core/error.hpp"

namespace fringescan {
namespace {

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

double bilinear(const std::vector<double>& grid, int nx, int ny, double gx, double gy) {
  gx = std::clamp(gx, 0.0, static_cast<double>(nx - 1));
  gy = std::clamp(gy, 0.0, static_cast<double>(ny - 1));
  int x0 = std::min(static_cast<int>(gx), nx - 2);
  int y0 = std::min(static_cast<int>(gy), ny - 2);
  double fx = gx - x0, fy = gy - y0;
  auto at = [&](int x, int y) { return grid[static_cast<std::size_t>(y) * nx + x]; };
  return (1 - fy) * ((1 - fx) * at(x0, y0) + fx * at(x0 + 1, y0)) +
         fy * ((1 - fx) * at(x0, y0 + 1) + fx * at(x0 + 1, y0 + 1));
}

Scene analytic_scene(double (*height)(double, double), double (*refl)(double, double)) {
  Scene s;
  s.nx = s.ny = 256;
  s.extent_x = s.extent_y = 4.0;
  s.height.resize(static_cast<std::size_t>(s.nx) * s.ny);
  s.reflectance.resize(s.height.size());
  for (int j = 0; j < s.ny; ++j)
    for (int i = 0; i < s.nx; ++i) {
      double x = s.extent_x * i / (s.nx - 1);
      double y = s.extent_y * j / (s.ny - 1);
      s.height[static_cast<std::size_t>(j) * s.nx + i] = height(x, y);
      s.reflectance[static_cast<std::size_t>(j) * s.nx + i] = refl(x, y);
    }
  return s;
}

double ramp_height(double x, double) { return 0.1 * x - 0.2; }
double unit_refl(double, double) { return 1.0; }

double bump_height(double x, double y) {
  double dx = x - 2.0, dy = y - 2.0;
  return 0.25 * std::exp(-(dx * dx + dy * dy) / (2.0 * 0.6 * 0.6));
}

// Reflectance-3 disk, radius 0.8 mm, edge softened over 0.25 mm so the rim
// spans the whole partial-saturation range instead of jumping across it.
double disk_refl(double x, double y) {
  double d = std::hypot(x - 2.0, y - 2.0);
  return 1.0 + 2.0 * smoothstep((0.8 - d) / 0.25 + 0.5);
}

}  // namespace

void Scene::validate() const {
  if (nx < 16 || ny < 16) fail(errc::bad_config, "scene grid must be at least 16x16");
  if (!(extent_x > 0) || !(extent_y > 0)) fail(errc::bad_config, "scene extent must be positive");
  const std::size_t count = static_cast<std::size_t>(nx) * ny;
  if (height.size() != count || reflectance.size() != count)
    fail(errc::dimension_mismatch, "scene raster size differs from grid");
  for (double v : height)
    if (!std::isfinite(v)) fail(errc::bad_config, "scene height must be finite");
  for (double v : reflectance)
    if (!std::isfinite(v) || v < 0) fail(errc::bad_config, "scene reflectance must be finite and >= 0");
}

double Scene::height_at(double x, double y) const {
  return bilinear(height, nx, ny, x / extent_x * (nx - 1), y / extent_y * (ny - 1));
}

double Scene::reflectance_at(double x, double y) const {
  return bilinear(reflectance, nx, ny, x / extent_x * (nx - 1), y / extent_y * (ny - 1));
}

double Scene::height_min() const { return *std::min_element(height.begin(), height.end()); }
double Scene::height_max() const { return *std::max_element(height.begin(), height.end()); }

Scene Scene::built_in(const std::string& name) {
  if (name == "plane") return analytic_scene(ramp_height, unit_refl);
  if (name == "gaussian-bump") return analytic_scene(bump_height, unit_refl);
  if (name == "shiny-disk-on-ramp") return analytic_scene(ramp_height, disk_refl);
  fail(errc::bad_config, "unknown scene '" + name + "'");
}

bool Scene::is_built_in(const std::string& name) {
  return name == "plane" || name == "gaussian-bump" || name == "shiny-disk-on-ramp";
}

Scene read_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::read_failure, path + ": unreadable file");
  std::string magic;
  Scene s;
  if (!(in >> magic >> s.nx >> s.ny >> s.extent_x >> s.extent_y) || magic != "fringescan-scene")
    fail(errc::format_error, path + ": not a scene file");
  if (s.nx <= 0 || s.ny <= 0) fail(errc::format_error, path + ": bad grid size");
  const std::size_t count = static_cast<std::size_t>(s.nx) * s.ny;
  s.height.resize(count);
  s.reflectance.resize(count);
  for (double& v : s.height)
    if (!(in >> v)) fail(errc::format_error, path + ": truncated height raster");
  for (double& v : s.reflectance)
    if (!(in >> v)) fail(errc::format_error, path + ": truncated reflectance raster");
  s.validate();
  return s;
}

void write_scene(const Scene& scene, const std::string& path) {
  scene.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, path + ": unwritable path");
  std::string text = "fringescan-scene " + std::to_string(scene.nx) + " " +
                     std::to_string(scene.ny) + " ";
  char buf[64];
  auto append = [&](double v) {
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    text.append(buf, r.ptr);
  };
  append(scene.extent_x);
  text.push_back(' ');
  append(scene.extent_y);
  text.push_back('\n');
  auto raster = [&](const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      append(grid[i]);
      text.push_back((i + 1) % static_cast<std::size_t>(scene.nx) == 0 ? '\n' : ' ');
    }
  };
  raster(scene.height);
  raster(scene.reflectance);
  out << text;
  if (!out) fail(errc::write_failure, path + ": write failed");
}

}  // namespace fringescan
