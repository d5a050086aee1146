#pragma once

#include <optional>
#include <span>

#include "fringescan/phase/schedule.hpp"

namespace fringescan {

struct Vec3 {
  double v[3] = {0, 0, 0};
};

struct Mat3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  Vec3 mul(const Vec3& x) const;
  double norm1() const;  // max absolute column sum
};

// Inverse via the adjugate; symmetry of the input is preserved exactly.
// Returns nullopt when the determinant is zero or non-finite.
std::optional<Mat3> invert3(const Mat3& a);

// Normal matrix A of the least-squares sinusoid fit and its inverse C.
struct CoefficientMatrix {
  Mat3 a;
  Mat3 c;
  double cond1 = 0;  // ||A||_1 * ||C||_1
};

inline constexpr double kDegenerateCond = 1e12;

// Builds A from the schedule's sums of 1, cos, sin and their products and
// inverts it. Fails with errc::degenerate_schedule when the condition
// estimate exceeds kDegenerateCond (e.g. all-equal shifts).
CoefficientMatrix build_coefficients(const ShiftSchedule& schedule);

// Same, but returns nullopt instead of throwing; used in per-pixel loops
// where degenerate survivor subsets must mark pixels invalid, not abort.
std::optional<CoefficientMatrix> try_build_coefficients(const ShiftSchedule& schedule);

// Wrapped phase from the two quadrature coefficients, canonical in (-pi, pi].
double canonical_phase(double sin_coeff, double cos_coeff);

// Least-squares wrapped-phase solve for an arbitrary schedule. Returns
// nullopt on zero modulation (both quadrature coefficients ~ 0).
std::optional<double> solve_generalized(std::span<const double> samples,
                                        std::span<const double> deltas,
                                        const CoefficientMatrix& coeffs);

// Convenience overload: builds coefficients from the schedule.
std::optional<double> solve_generalized(std::span<const double> samples,
                                        const ShiftSchedule& schedule);

// Fast path for the uniform N-step schedule:
// phi = -atan2(sum I_n sin d_n, sum I_n cos d_n).
std::optional<double> solve_standard(std::span<const double> samples);

// Kernel with caller-supplied cos/sin tables (table[n] = trig(2*pi*n/N));
// the uniform-stack image path and solve_standard share these exact sums,
// which is what makes their outputs bit-identical.
std::optional<double> solve_standard(std::span<const double> samples,
                                     std::span<const double> cos_table,
                                     std::span<const double> sin_table);

// Full three-parameter fit: I_n ~ offset + amplitude*cos(phase + delta_n).
struct SinusoidFit {
  double offset = 0;
  double amplitude = 0;
  double phase = 0;  // wrapped
};
std::optional<SinusoidFit> fit_sinusoid(std::span<const double> samples,
                                        std::span<const double> deltas,
                                        const CoefficientMatrix& coeffs);

}  // namespace fringescan
