#include "fringescan/hdr/saturation.hpp"

namespace fringescan {

void HdrConfig::validate() const {
  if (sat_thr < 1 || sat_thr > 255) fail(errc::bad_config, "sat_thr must lie in [1, 255]");
}

template <class T>
SaturationMap sat_map(const BasicFringeStack<T>& stack, const HdrConfig& config) {
  stack.validate();
  config.validate();
  const double thr = static_cast<double>(config.sat_thr);
  SaturationMap counts(stack.width(), stack.height(), 0);
  for (const auto& img : stack.samples) {
    const T* src = img.data();
    std::uint8_t* dst = counts.data();
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
      dst[i] = static_cast<std::uint8_t>(dst[i] + (static_cast<double>(src[i]) >= thr));
  }
  return counts;
}

template SaturationMap sat_map<std::uint8_t>(const BasicFringeStack<std::uint8_t>&,
                                             const HdrConfig&);
template SaturationMap sat_map<double>(const BasicFringeStack<double>&, const HdrConfig&);

IndexMap oversaturation_map(const SaturationMap& counts, int sample_count) {
  IndexMap flags(counts.width(), counts.height(), 0);
  const std::uint8_t* src = counts.data();
  std::uint8_t* dst = flags.data();
  const int limit = sample_count - HdrConfig::min_valid;
  for (std::size_t i = 0; i < counts.pixel_count(); ++i) dst[i] = src[i] > limit;
  return flags;
}

}  // namespace fringescan
