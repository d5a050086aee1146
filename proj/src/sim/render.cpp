#include "fringescan/sim/render.hpp"

#include <algorithm>
#include <cmath>

#include "fringescan/phase/schedule.hpp"
#include "fringescan/sim/rng.hpp"

namespace fringescan {

double CounterRng::normal(std::uint64_t counter) const {
  std::uint64_t a = splitmix64(key ^ (counter * 0x9e3779b97f4a7c15ull + 1));
  std::uint64_t b = splitmix64(a);
  double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;          // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double ProjectorModel::contrast(double period) const {
  double a = kPi * blur_px / period;
  return alpha0 * std::exp(-a * a);
}

void ProjectorModel::validate() const {
  if (periods.empty() || periods.size() != steps.size())
    fail(errc::bad_config, "projector periods/steps must align and be non-empty");
  for (std::size_t m = 0; m < periods.size(); ++m) {
    if (!(periods[m] > 0)) fail(errc::bad_config, "projector periods must be positive");
    if (m && !(periods[m] < periods[m - 1]))
      fail(errc::bad_config, "periods must strictly decrease from loosest to densest");
    if (steps[m] < 3) fail(errc::insufficient_samples, "insufficient samples: need at least 3 steps");
  }
  if (!(field_px > 0)) fail(errc::bad_config, "projector field must be positive");
  if (!(i0 > 0)) fail(errc::bad_config, "base intensity must be positive");
  if (!(alpha0 > 0) || alpha0 > 1) fail(errc::bad_config, "base modulation must lie in (0, 1]");
  if (blur_px < 0) fail(errc::bad_config, "blur radius must be non-negative");
}

void SensorModel::validate() const {
  if (sigma < 0) fail(errc::bad_config, "noise sigma must be non-negative");
}

void CameraRig::validate() const {
  if (width < 16 || height < 16) fail(errc::bad_config, "camera frame must be at least 16x16");
  if (!(scale_px_per_mm > 0)) fail(errc::bad_config, "camera scale must be positive");
  if (half_angle_deg <= 0 || half_angle_deg >= 90)
    fail(errc::bad_config, "camera half angle must lie in (0, 90) degrees");
}

namespace {

struct ViewGeometry {
  double s = 0, cos_t = 0, sin_t = 0, cu = 0, cv = 0;
  double view_sign = 0;  // -1 left, +1 right: u = s*(x*cos_t + sign*z*sin_t) + cu

  // x of the surface point imaged at column u on world row y. The fixed
  // point of x = ((u-cu)/s - sign*z(x,y)*sin_t)/cos_t; the iteration
  // contracts because surface slope * tan(theta) << 1.
  double surface_x(const Scene& scene, double u, double y) const {
    double x = (u - cu) / (s * cos_t);
    for (int it = 0; it < 60; ++it) {
      double nx = ((u - cu) / s - view_sign * scene.height_at(x, y) * sin_t) / cos_t;
      if (std::abs(nx - x) < 1e-14 * std::max(1.0, std::abs(x))) return nx;
      x = nx;
    }
    return x;
  }
};

ViewGeometry view_geometry(const Scene& scene, const CameraRig& rig, int view) {
  ViewGeometry g;
  g.s = rig.scale_px_per_mm;
  double theta = rig.half_angle_deg * kPi / 180.0;
  g.cos_t = std::cos(theta);
  g.sin_t = std::sin(theta);
  g.cu = (rig.width - g.s * scene.extent_x * g.cos_t) / 2.0;
  g.cv = (rig.height - g.s * scene.extent_y) / 2.0;
  g.view_sign = view == 0 ? -1.0 : 1.0;
  return g;
}

AffineCamera camera_of(const ViewGeometry& g) {
  AffineCamera cam;
  cam.p[0][0] = g.s * g.cos_t;
  cam.p[0][2] = g.s * g.view_sign * g.sin_t;
  cam.p[0][3] = g.cu;
  cam.p[1][1] = g.s;
  cam.p[1][3] = g.cv;
  return cam;
}

// Every pixel must image a surface point inside the scene extent;
// otherwise the loosest level is no longer an absolute reference there.
void check_coverage(const Scene& scene, const CameraRig& rig, const ViewGeometry& g) {
  double zmin = scene.height_min(), zmax = scene.height_max();
  for (double u : {0.0, static_cast<double>(rig.width - 1)})
    for (double z : {zmin, zmax}) {
      double x = ((u - g.cu) / g.s - g.view_sign * z * g.sin_t) / g.cos_t;
      if (x < 0 || x > scene.extent_x)
        fail(errc::geometry_error, "camera frame exceeds the scene extent");
    }
  for (double v : {0.0, static_cast<double>(rig.height - 1)}) {
    double y = (v - g.cv) / g.s;
    if (y < 0 || y > scene.extent_y)
      fail(errc::geometry_error, "camera frame exceeds the scene extent");
  }
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

// Shared forward model; Emit receives (pixel_index, sample_index, value).
template <class Emit>
void render_view_samples(const Scene& scene, const SimParams& params, std::uint64_t seed,
                         int view, int level, const ViewGeometry& g, Emit&& emit) {
  const ProjectorModel& proj = params.projector;
  const double per = proj.periods[static_cast<std::size_t>(level)];
  const int steps = proj.steps[static_cast<std::size_t>(level)];
  const double alpha = proj.contrast(per);
  const double px_per_mm = proj.field_px / scene.extent_x;
  const double sigma = params.sensor.sigma;
  const int w = params.rig.width, h = params.rig.height;
  const ShiftSchedule sched = ShiftSchedule::uniform(steps);

  for (int n = 0; n < steps; ++n) {
    CounterRng rng{CounterRng::derive_key(seed, static_cast<std::uint64_t>(view),
                                          static_cast<std::uint64_t>(level),
                                          static_cast<std::uint64_t>(n))};
    const double delta = sched.deltas[static_cast<std::size_t>(n)];
    for (int v = 0; v < h; ++v) {
      double y = (v - g.cv) / g.s;
      for (int u = 0; u < w; ++u) {
        double x = g.surface_x(scene, u, y);
        double psi = kTwoPi * (x * px_per_mm - proj.field_px / 2.0) / per;
        double value = scene.reflectance_at(x, y) * proj.i0 * (1.0 + alpha * std::cos(psi + delta));
        if (sigma > 0)
          value += sigma * rng.normal(static_cast<std::uint64_t>(v) * w + u);
        emit(static_cast<std::size_t>(v) * w + u, n, value);
      }
    }
  }
}

MultiFreqSet render_view(const Scene& scene, const SimParams& params, std::uint64_t seed,
                         int view, const ViewGeometry& g) {
  const ProjectorModel& proj = params.projector;
  const int w = params.rig.width, h = params.rig.height;
  std::vector<FringeStack> stacks;
  stacks.reserve(proj.periods.size());
  for (std::size_t level = 0; level < proj.periods.size(); ++level) {
    FringeStack stack;
    stack.period = proj.periods[level];
    stack.shifts = ShiftSchedule::uniform(proj.steps[level]).deltas;
    stack.samples.assign(static_cast<std::size_t>(proj.steps[level]), ImageU8(w, h));
    render_view_samples(scene, params, seed, view, static_cast<int>(level), g,
                        [&](std::size_t pixel, int n, double value) {
                          stack.samples[static_cast<std::size_t>(n)].data()[pixel] =
                              quantize(value);
                        });
    stacks.push_back(std::move(stack));
  }
  return make_multi_freq_set(std::move(stacks), HdrConfig{});
}

}  // namespace

std::pair<AffineCamera, AffineCamera> make_rectified_rig(const Scene& scene,
                                                         const CameraRig& rig) {
  scene.validate();
  rig.validate();
  return {camera_of(view_geometry(scene, rig, 0)), camera_of(view_geometry(scene, rig, 1))};
}

RenderResult render_stacks(const Scene& scene, const SimParams& params, std::uint64_t seed) {
  scene.validate();
  params.projector.validate();
  params.sensor.validate();
  params.rig.validate();

  const ViewGeometry gl = view_geometry(scene, params.rig, 0);
  const ViewGeometry gr = view_geometry(scene, params.rig, 1);
  check_coverage(scene, params.rig, gl);
  check_coverage(scene, params.rig, gr);

  RenderResult out;
  out.left = render_view(scene, params, seed, 0, gl);
  out.right = render_view(scene, params, seed, 1, gr);

  const int w = params.rig.width, h = params.rig.height;
  const double per_dense = params.projector.periods.back();
  const double px_per_mm = params.projector.field_px / scene.extent_x;
  out.truth.phase_left = PhaseMap::make(w, h, PhaseKind::equivalent, per_dense);
  out.truth.phase_right = PhaseMap::make(w, h, PhaseKind::equivalent, per_dense);
  out.truth.cloud.points.reserve(static_cast<std::size_t>(w) * h);

  for (int view = 0; view < 2; ++view) {
    const ViewGeometry& g = view == 0 ? gl : gr;
    PhaseMap& map = view == 0 ? out.truth.phase_left : out.truth.phase_right;
    for (int v = 0; v < h; ++v) {
      double y = (v - g.cv) / g.s;
      for (int u = 0; u < w; ++u) {
        double x = g.surface_x(scene, u, y);
        map.set(u, v, kTwoPi * (x * px_per_mm - params.projector.field_px / 2.0) / per_dense);
        if (view == 0)
          out.truth.cloud.points.push_back({x, y, scene.height_at(x, y), u, v, 0.0});
      }
    }
  }
  return out;
}

std::vector<RealFringeStack> render_stacks_real(const Scene& scene, const SimParams& params,
                                                std::uint64_t seed, int view) {
  scene.validate();
  params.projector.validate();
  params.sensor.validate();
  params.rig.validate();
  const ViewGeometry g = view_geometry(scene, params.rig, view);
  check_coverage(scene, params.rig, g);

  const ProjectorModel& proj = params.projector;
  const int w = params.rig.width, h = params.rig.height;
  std::vector<RealFringeStack> stacks;
  stacks.reserve(proj.periods.size());
  for (std::size_t level = 0; level < proj.periods.size(); ++level) {
    RealFringeStack stack;
    stack.period = proj.periods[level];
    stack.shifts = ShiftSchedule::uniform(proj.steps[level]).deltas;
    stack.samples.assign(static_cast<std::size_t>(proj.steps[level]), ImageF64(w, h));
    render_view_samples(scene, params, seed, view, static_cast<int>(level), g,
                        [&](std::size_t pixel, int n, double value) {
                          stack.samples[static_cast<std::size_t>(n)].data()[pixel] =
                              std::clamp(value, 0.0, 255.0);
                        });
    stacks.push_back(std::move(stack));
  }
  return stacks;
}

}  // namespace fringescan
