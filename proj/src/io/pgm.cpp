#include "fringescan/io/pgm.hpp"

#include <fstream>
#include <string>

namespace fringescan {
namespace {

// Skips whitespace and '#' comment lines between header tokens.
int next_header_int(std::istream& in, const std::string& path) {
  int c = in.peek();
  while (c == '#' || std::isspace(c)) {
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else {
      in.get();
    }
    c = in.peek();
  }
  int value = 0;
  if (!(in >> value)) fail(errc::format_error, path + ": malformed header");
  return value;
}

}  // namespace

ImageU8 read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::read_failure, path + ": unreadable file");
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '5') fail(errc::format_error, path + ": not a binary PGM (P5)");
  int w = next_header_int(in, path);
  int h = next_header_int(in, path);
  int maxval = next_header_int(in, path);
  if (w <= 0 || h <= 0) fail(errc::format_error, path + ": bad dimensions");
  if (maxval != 255) fail(errc::format_error, path + ": only 8-bit (maxval 255) supported");
  in.get();  // single whitespace byte after maxval
  ImageU8 img(w, h);
  in.read(reinterpret_cast<char*>(img.data()), static_cast<std::streamsize>(img.pixel_count()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixel_count()))
    fail(errc::format_error, path + ": truncated pixel data");
  return img;
}

void write_pgm(const ImageU8& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, path + ": unwritable path");
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()),
            static_cast<std::streamsize>(img.pixel_count()));
  if (!out) fail(errc::write_failure, path + ": write failed");
}

}  // namespace fringescan
