#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "fringescan/core/image.hpp"

namespace fringescan {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Canonical wrapped-phase interval is (-pi, pi], the range of the
// two-argument arctangent solve.
inline double wrap_phase(double x) {
  double r = std::remainder(x, kTwoPi);
  return r <= -kPi ? r + kTwoPi : r;
}

enum class PhaseKind { wrapped, unwrapped, equivalent };

// Per-pixel phase with a validity mask. Invalid pixels carry NaN and must be
// excluded from all downstream statistics.
struct PhaseMap {
  ImageF64 values;
  ImageU8 valid;
  PhaseKind kind = PhaseKind::wrapped;
  double period = 0;  // fringe period the phase refers to, projector px

  static PhaseMap make(int width, int height, PhaseKind kind, double period);

  int width() const { return values.width(); }
  int height() const { return values.height(); }

  bool is_valid(int x, int y) const { return valid.at(x, y) != 0; }
  void set(int x, int y, double value) {
    values.at(x, y) = value;
    valid.at(x, y) = 1;
  }
  void set_invalid(int x, int y) {
    values.at(x, y) = std::numeric_limits<double>::quiet_NaN();
    valid.at(x, y) = 0;
  }

  std::size_t valid_count() const;
  double valid_fraction() const;

  // Wrapped-range invariant: every valid value lies in (-pi, pi].
  bool wrapped_range_ok() const;
};

}  // namespace fringescan
