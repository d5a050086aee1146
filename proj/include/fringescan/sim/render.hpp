#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fringescan/core/point_cloud.hpp"
#include "fringescan/hdr/fusion.hpp"
#include "fringescan/sim/scene.hpp"
#include "fringescan/stereo/camera.hpp"

namespace fringescan {

// Orthographic top-down projector. Its phase axis is world x; field_px
// projector pixels span the scene's x extent, and the phase of level m is
// psi_m(x) = 2*pi*(x_proj - field_px/2)/per_m, so a period equal to
// field_px puts exactly one centered fringe across the field and that
// level's wrapped phase is absolute.
struct ProjectorModel {
  std::vector<double> periods{912, 144, 24, 12};  // projector px, loosest first
  std::vector<int> steps{12, 12, 12, 12};
  double field_px = 912;
  double i0 = 100;      // base intensity, counts
  double alpha0 = 0.5;  // base modulation
  double blur_px = 4.0; // Gaussian defocus radius, projector px

  // A sinusoid is an eigenfunction of Gaussian blur: contrast scales by
  // exp(-(pi*s/per)^2) exactly.
  double contrast(double period) const;
  void validate() const;
};

struct SensorModel {
  double sigma = 1.0;  // additive Gaussian noise, counts; quantization is 8-bit

  void validate() const;
};

// Rectified stereo pair: both cameras share the v = scale*y + cv equation;
// u axes view the x-z plane from +-half_angle around vertical. The frame
// must view strictly inside the scene so that every pixel images surface
// and the loosest fringe level stays an absolute phase reference.
struct CameraRig {
  int width = 256, height = 256;
  double scale_px_per_mm = 68;
  double half_angle_deg = 10;

  void validate() const;
};

struct SimParams {
  ProjectorModel projector;
  SensorModel sensor;
  CameraRig rig;
};

std::pair<AffineCamera, AffineCamera> make_rectified_rig(const Scene& scene, const CameraRig& rig);

struct GroundTruth {
  PhaseMap phase_left;   // absolute projector phase at the densest scale
  PhaseMap phase_right;
  PointCloud cloud;      // one point per left pixel, row-major
};

struct RenderResult {
  MultiFreqSet left;
  MultiFreqSet right;
  GroundTruth truth;
};

// Renders quantize(clamp(r*I0*(1 + alpha(per)*cos(phase + delta_n)) + noise))
// per sample; deterministic for a fixed seed (counter-based noise keyed by
// seed, view, level, sample, pixel). Fails if any pixel of either camera
// views outside the scene extent.
RenderResult render_stacks(const Scene& scene, const SimParams& params, std::uint64_t seed);

// Analysis path: real-valued samples, clamped to [0, 255] but not
// quantized. Same noise stream as render_stacks.
std::vector<RealFringeStack> render_stacks_real(const Scene& scene, const SimParams& params,
                                                std::uint64_t seed, int view);

}  // namespace fringescan
