#pragma once

#include <cstdint>
#include <vector>

#include "fringescan/core/error.hpp"
#include "fringescan/core/image.hpp"

namespace fringescan {

// A stack of N phase-shifted fringe images plus its shift schedule and
// fringe period. samples[n] was captured at reference phase shifts[n].
template <class T>
struct BasicFringeStack {
  std::vector<Image<T>> samples;
  std::vector<double> shifts;  // radians
  double period = 0;           // projector px

  int sample_count() const { return static_cast<int>(samples.size()); }
  int width() const { return samples.empty() ? 0 : samples.front().width(); }
  int height() const { return samples.empty() ? 0 : samples.front().height(); }

  void validate() const {
    if (samples.size() != shifts.size())
      fail(errc::dimension_mismatch, "sample/shift count mismatch");
    if (samples.size() < 3) fail(errc::insufficient_samples, "insufficient samples: need at least 3");
    // Elimination masks are stored in a 64-bit word downstream.
    if (samples.size() > 64) fail(errc::bad_config, "more than 64 samples per stack is unsupported");
    for (const auto& img : samples)
      if (!img.same_size(samples.front())) fail(errc::dimension_mismatch, "dimension mismatch across stack");
    if (!(period > 0)) fail(errc::bad_config, "fringe period must be positive");
  }
};

using FringeStack = BasicFringeStack<std::uint8_t>;
using RealFringeStack = BasicFringeStack<double>;

}  // namespace fringescan
