#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fringescan/core/error.hpp"

namespace fringescan {

// Row-major single-channel raster; (0,0) is the top-left pixel.
template <class T>
class Image {
public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : w_(width), h_(height), px_(checked_size(width, height), fill) {}

  int width() const { return w_; }
  int height() const { return h_; }
  bool empty() const { return px_.empty(); }
  std::size_t pixel_count() const { return px_.size(); }

  bool inside(int x, int y) const { return x >= 0 && x < w_ && y >= 0 && y < h_; }

  T& at(int x, int y) {
    assert(inside(x, y));
    return px_[static_cast<std::size_t>(y) * w_ + x];
  }
  const T& at(int x, int y) const {
    assert(inside(x, y));
    return px_[static_cast<std::size_t>(y) * w_ + x];
  }

  T* data() { return px_.data(); }
  const T* data() const { return px_.data(); }

  template <class U>
  bool same_size(const Image<U>& other) const {
    return w_ == other.width() && h_ == other.height();
  }

  friend bool operator==(const Image& a, const Image& b) {
    return a.w_ == b.w_ && a.h_ == b.h_ && a.px_ == b.px_;
  }

private:
  static std::size_t checked_size(int width, int height) {
    if (width <= 0 || height <= 0) fail(errc::bad_config, "image dimensions must be positive");
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  int w_ = 0;
  int h_ = 0;
  std::vector<T> px_;
};

using ImageU8 = Image<std::uint8_t>;
using ImageF64 = Image<double>;

}  // namespace fringescan
