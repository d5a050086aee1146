#include "fringescan/io/pfm.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

namespace fringescan {

static_assert(std::endian::native == std::endian::little,
              "PFM writer assumes a little-endian host");

void write_phase_map(const PhaseMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, path + ": unwritable path");
  const int w = map.width(), h = map.height();
  out << "Pf\n" << w << " " << h << "\n-1.0\n";
  std::vector<float> row(static_cast<std::size_t>(w));
  for (int y = h - 1; y >= 0; --y) {  // PFM stores rows bottom-up
    for (int x = 0; x < w; ++x) row[x] = static_cast<float>(map.values.at(x, y));
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) fail(errc::write_failure, path + ": write failed");
}

PhaseMap read_phase_map(const std::string& path, PhaseKind kind, double period) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::read_failure, path + ": unreadable file");
  std::string magic;
  in >> magic;
  if (magic != "Pf") fail(errc::format_error, path + ": not a grayscale PFM");
  int w = 0, h = 0;
  double scale = 0;
  if (!(in >> w >> h >> scale) || w <= 0 || h <= 0)
    fail(errc::format_error, path + ": malformed header");
  if (!(scale < 0)) fail(errc::format_error, path + ": big-endian PFM unsupported");
  in.get();  // single whitespace byte after scale
  PhaseMap map = PhaseMap::make(w, h, kind, period);
  std::vector<float> row(static_cast<std::size_t>(w));
  for (int y = h - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(row.size() * sizeof(float)))
      fail(errc::format_error, path + ": truncated pixel data");
    for (int x = 0; x < w; ++x) {
      if (std::isnan(row[x]))
        map.set_invalid(x, y);
      else
        map.set(x, y, row[x]);
    }
  }
  return map;
}

}  // namespace fringescan
