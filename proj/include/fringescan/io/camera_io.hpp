#pragma once

#include <string>
#include <utility>

#include "fringescan/stereo/camera.hpp"

namespace fringescan {

// Plain-text camera file: 2 rows x 4 columns of decimals per camera,
// left camera first, then right. Values use shortest round-trip form.
void write_cameras(const AffineCamera& left, const AffineCamera& right, const std::string& path);
std::pair<AffineCamera, AffineCamera> read_cameras(const std::string& path);

}  // namespace fringescan
