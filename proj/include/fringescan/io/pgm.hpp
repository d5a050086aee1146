#pragma once

#include <string>

#include "fringescan/core/image.hpp"

namespace fringescan {

// Binary PGM (P5), maxval 255 only. Pixel values round-trip bit-exactly.
ImageU8 read_pgm(const std::string& path);
void write_pgm(const ImageU8& img, const std::string& path);

}  // namespace fringescan
