#pragma once

#include <string>

#include "fringescan/stereo/match.hpp"

namespace fringescan {

// One "u_left v u_right" line per match; u_right in shortest round-trip form.
void write_matches(const MatchList& matches, const std::string& path);
MatchList read_matches(const std::string& path);

}  // namespace fringescan
