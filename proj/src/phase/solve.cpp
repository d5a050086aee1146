#include "fringescan/phase/solve.hpp"

#include <algorithm>
#include <cmath>

#include "fringescan/core/error.hpp"
#include "fringescan/core/phase_map.hpp"

namespace fringescan {

Vec3 Mat3::mul(const Vec3& x) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r.v[i] = m[i][0] * x.v[0] + m[i][1] * x.v[1] + m[i][2] * x.v[2];
  return r;
}

double Mat3::norm1() const {
  double best = 0;
  for (int j = 0; j < 3; ++j) {
    double s = std::abs(m[0][j]) + std::abs(m[1][j]) + std::abs(m[2][j]);
    if (s > best) best = s;
  }
  return best;
}

std::optional<Mat3> invert3(const Mat3& a) {
  const auto& m = a.m;
  double cof[3][3];
  cof[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  cof[0][1] = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
  cof[0][2] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  cof[1][0] = -(m[0][1] * m[2][2] - m[0][2] * m[2][1]);
  cof[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  cof[1][2] = -(m[0][0] * m[2][1] - m[0][1] * m[2][0]);
  cof[2][0] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  cof[2][1] = -(m[0][0] * m[1][2] - m[0][2] * m[1][0]);
  cof[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double det = m[0][0] * cof[0][0] + m[0][1] * cof[0][1] + m[0][2] * cof[0][2];
  if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
  Mat3 inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) inv.m[j][i] = cof[i][j] / det;  // adjugate transpose
  return inv;
}

namespace {

Mat3 normal_matrix(const ShiftSchedule& schedule) {
  double sc = 0, ss = 0, scc = 0, sss = 0, ssc = 0;
  for (double d : schedule.deltas) {
    double c = std::cos(d), s = std::sin(d);
    sc += c;
    ss += s;
    scc += c * c;
    sss += s * s;
    ssc += s * c;
  }
  Mat3 a;
  a.m[0][0] = static_cast<double>(schedule.size());
  a.m[0][1] = a.m[1][0] = sc;
  a.m[0][2] = a.m[2][0] = ss;
  a.m[1][1] = scc;
  a.m[1][2] = a.m[2][1] = ssc;
  a.m[2][2] = sss;
  return a;
}

// Quadrature magnitude at or below this is "zero modulation": indistinguishable
// from rounding residue of a constant signal of the same gross intensity.
bool below_modulation_floor(double s, double c, double abs_sum) {
  return std::hypot(s, c) <= 1e-12 * (1.0 + abs_sum);
}

}  // namespace

CoefficientMatrix build_coefficients(const ShiftSchedule& schedule) {
  auto coeffs = try_build_coefficients(schedule);
  if (!coeffs) fail(errc::degenerate_schedule, "degenerate schedule");
  return *coeffs;
}

std::optional<CoefficientMatrix> try_build_coefficients(const ShiftSchedule& schedule) {
  if (schedule.size() < 3) return std::nullopt;
  CoefficientMatrix out;
  out.a = normal_matrix(schedule);
  auto inv = invert3(out.a);
  if (!inv) return std::nullopt;
  out.c = *inv;
  out.cond1 = out.a.norm1() * out.c.norm1();
  if (!(out.cond1 <= kDegenerateCond)) return std::nullopt;
  // For an exactly rank-deficient A the adjugate and determinant are both
  // rounding residue and their quotient can look well-scaled, so cond1 alone
  // does not expose it. A true inverse satisfies ||C*A - I|| = O(cond * eps).
  double residual = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sum = (i == j) ? -1.0 : 0.0;
      for (int k = 0; k < 3; ++k) sum += out.c.m[i][k] * out.a.m[k][j];
      residual = std::max(residual, std::abs(sum));
    }
  if (!(residual <= out.cond1 * 1e-12)) return std::nullopt;
  return out;
}

double canonical_phase(double sin_coeff, double cos_coeff) {
  double phi = -std::atan2(sin_coeff, cos_coeff);
  if (phi <= -kPi) phi += kTwoPi;
  return phi;
}

std::optional<double> solve_generalized(std::span<const double> samples,
                                        std::span<const double> deltas,
                                        const CoefficientMatrix& coeffs) {
  double b0 = 0, b1 = 0, b2 = 0, abs_sum = 0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    double i = samples[n];
    b0 += i;
    b1 += i * std::cos(deltas[n]);
    b2 += i * std::sin(deltas[n]);
    abs_sum += std::abs(i);
  }
  const auto& c = coeffs.c.m;
  double a1 = c[1][0] * b0 + c[1][1] * b1 + c[1][2] * b2;
  double a2 = c[2][0] * b0 + c[2][1] * b1 + c[2][2] * b2;
  if (below_modulation_floor(a2, a1, abs_sum)) return std::nullopt;
  return canonical_phase(a2, a1);
}

std::optional<double> solve_generalized(std::span<const double> samples,
                                        const ShiftSchedule& schedule) {
  if (samples.size() != schedule.deltas.size())
    fail(errc::dimension_mismatch, "sample/schedule length mismatch");
  return solve_generalized(samples, schedule.deltas, build_coefficients(schedule));
}

std::optional<double> solve_standard(std::span<const double> samples,
                                     std::span<const double> cos_table,
                                     std::span<const double> sin_table) {
  double ssum = 0, csum = 0, abs_sum = 0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    ssum += samples[n] * sin_table[n];
    csum += samples[n] * cos_table[n];
    abs_sum += std::abs(samples[n]);
  }
  if (below_modulation_floor(ssum, csum, abs_sum)) return std::nullopt;
  return canonical_phase(ssum, csum);
}

std::optional<double> solve_standard(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 3) fail(errc::insufficient_samples, "insufficient samples: need at least 3");
  std::vector<double> cos_table(samples.size()), sin_table(samples.size());
  for (int k = 0; k < n; ++k) {
    double d = kTwoPi * k / n;
    cos_table[k] = std::cos(d);
    sin_table[k] = std::sin(d);
  }
  return solve_standard(samples, cos_table, sin_table);
}

std::optional<SinusoidFit> fit_sinusoid(std::span<const double> samples,
                                        std::span<const double> deltas,
                                        const CoefficientMatrix& coeffs) {
  Vec3 b;
  double abs_sum = 0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    double i = samples[n];
    b.v[0] += i;
    b.v[1] += i * std::cos(deltas[n]);
    b.v[2] += i * std::sin(deltas[n]);
    abs_sum += std::abs(i);
  }
  Vec3 x = coeffs.c.mul(b);
  if (below_modulation_floor(x.v[2], x.v[1], abs_sum)) return std::nullopt;
  SinusoidFit fit;
  fit.offset = x.v[0];
  fit.amplitude = std::hypot(x.v[1], x.v[2]);
  fit.phase = canonical_phase(x.v[2], x.v[1]);
  return fit;
}

}  // namespace fringescan
