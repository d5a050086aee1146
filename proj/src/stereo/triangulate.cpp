#include "fringescan/stereo/triangulate.hpp"

#include <cmath>

#include "fringescan/phase/solve.hpp"

namespace fringescan {

PointCloud triangulate(const MatchList& matches, const AffineCamera& left,
                       const AffineCamera& right, const TriangulationParams& params,
                       TriangulationReport* report) {
  left.validate();
  right.validate();
  TriangulationReport local;
  TriangulationReport& rep = report ? *report : local;

  PointCloud cloud;
  cloud.points.reserve(matches.size());

  for (const Match& m : matches) {
    double a[4][3], b[4];
    const double* rows[4] = {left.p[0], left.p[1], right.p[0], right.p[1]};
    const double rhs[4] = {static_cast<double>(m.u_left) - left.p[0][3],
                           static_cast<double>(m.v) - left.p[1][3],
                           m.u_right - right.p[0][3],
                           static_cast<double>(m.v) - right.p[1][3]};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] = rows[i][j];
      b[i] = rhs[i];
    }

    Mat3 normal;
    Vec3 atb;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += a[k][i] * a[k][j];
        normal.m[i][j] = s;
      }
      double s = 0;
      for (int k = 0; k < 4; ++k) s += a[k][i] * b[k];
      atb.v[i] = s;
    }

    auto inv = invert3(normal);
    if (!inv || normal.norm1() * inv->norm1() > kDegenerateCond) {
      rep.rejected_rank++;
      continue;
    }
    Vec3 x = inv->mul(atb);

    double res2 = 0;
    for (int k = 0; k < 4; ++k) {
      double e = a[k][0] * x.v[0] + a[k][1] * x.v[1] + a[k][2] * x.v[2] - b[k];
      res2 += e * e;
    }
    double residual = std::sqrt(res2);
    if (residual > params.residual_bound) {
      rep.rejected_residual++;
      continue;
    }

    rep.accepted++;
    cloud.points.push_back({x.v[0], x.v[1], x.v[2], m.u_left, m.v, residual});
  }
  return cloud;
}

}  // namespace fringescan
