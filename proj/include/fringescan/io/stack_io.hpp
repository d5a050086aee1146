#pragma once

#include <string>
#include <vector>

#include "fringescan/core/fringe_stack.hpp"

namespace fringescan {

// Loads one phase-shifted stack from PGM files, one file per shift sample,
// aligned index-for-index with shifts. Pixel values are preserved bit-exactly.
FringeStack read_image_stack(const std::vector<std::string>& paths,
                             const std::vector<double>& shifts, double period);

}  // namespace fringescan
