#include "fringescan/io/camera_io.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "fringescan/core/error.hpp"

namespace fringescan {
namespace {

void append_double(std::string& s, double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, r.ptr);
}

}  // namespace

void write_cameras(const AffineCamera& left, const AffineCamera& right, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, path + ": unwritable path");
  std::string text;
  for (const AffineCamera* cam : {&left, &right})
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (c) text.push_back(' ');
        append_double(text, cam->p[r][c]);
      }
      text.push_back('\n');
    }
  out << text;
  if (!out) fail(errc::write_failure, path + ": write failed");
}

std::pair<AffineCamera, AffineCamera> read_cameras(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::read_failure, "camera file not found: " + path);
  AffineCamera left, right;
  for (AffineCamera* cam : {&left, &right})
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c)
        if (!(in >> cam->p[r][c])) fail(errc::format_error, path + ": malformed camera file");
  left.validate();
  right.validate();
  return {left, right};
}

}  // namespace fringescan
