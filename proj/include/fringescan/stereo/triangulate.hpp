#pragma once

#include "fringescan/core/point_cloud.hpp"
#include "fringescan/stereo/camera.hpp"
#include "fringescan/stereo/match.hpp"

namespace fringescan {

struct TriangulationParams {
  double residual_bound = 0.5;  // px; reprojection residual above this rejects the point
};

struct TriangulationReport {
  long long accepted = 0;
  long long rejected_residual = 0;
  long long rejected_rank = 0;
};

// Least-squares world point of the 4 projection equations from
// (u_L, v) and (u_R, v). The residual is the 2-norm of the 4-vector of
// equation residuals in pixels; every accepted point reprojects into both
// cameras within the bound.
PointCloud triangulate(const MatchList& matches, const AffineCamera& left,
                       const AffineCamera& right, const TriangulationParams& params,
                       TriangulationReport* report = nullptr);

}  // namespace fringescan
