#pragma once

#include <string>

#include "fringescan/core/phase_map.hpp"

namespace fringescan {

// Grayscale PFM ("Pf", scale -1.0 = little endian, rows bottom-up).
// Invalid pixels are written as NaN; the float payload round-trips
// bit-exactly. Values pass through 32-bit floats.
void write_phase_map(const PhaseMap& map, const std::string& path);

// The file carries no phase semantics; the caller supplies them.
PhaseMap read_phase_map(const std::string& path, PhaseKind kind, double period);

}  // namespace fringescan
