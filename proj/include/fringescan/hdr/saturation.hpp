#pragma once

#include <cstdint>

#include "fringescan/core/fringe_stack.hpp"
#include "fringescan/core/image.hpp"

namespace fringescan {

// Per-pixel count of saturated samples within one stack.
using SaturationMap = Image<std::uint8_t>;
// Per-pixel boolean flags (0/1).
using IndexMap = Image<std::uint8_t>;

struct HdrConfig {
  int sat_thr = 255;  // a sample is saturated when I >= sat_thr
  static constexpr int min_valid = 3;  // survivor floor of the 3-parameter solve

  void validate() const;
};

// counts(u,v) = number of samples with I_n(u,v) >= sat_thr.
template <class T>
SaturationMap sat_map(const BasicFringeStack<T>& stack, const HdrConfig& config);

// flags(u,v) = counts(u,v) > N_S - 3, i.e. fewer than 3 usable samples
// survive elimination; such a pixel is over-saturated at this level.
IndexMap oversaturation_map(const SaturationMap& counts, int sample_count);

}  // namespace fringescan
