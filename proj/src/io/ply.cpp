#include "fringescan/io/ply.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "fringescan/core/error.hpp"

namespace fringescan {
namespace {

// Shortest decimal form that round-trips the float32 value.
void append_float(std::string& s, float v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, r.ptr);
}

float parse_float(const std::string& token, const std::string& path) {
  float v = 0;
  auto r = std::from_chars(token.data(), token.data() + token.size(), v);
  if (r.ec != std::errc() || r.ptr != token.data() + token.size())
    fail(errc::format_error, path + ": bad vertex value '" + token + "'");
  return v;
}

}  // namespace

void write_point_cloud(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, path + ": unwritable path");
  std::string body;
  body.reserve(cloud.size() * 24);
  for (const auto& p : cloud.points) {
    append_float(body, static_cast<float>(p.x));
    body.push_back(' ');
    append_float(body, static_cast<float>(p.y));
    body.push_back(' ');
    append_float(body, static_cast<float>(p.z));
    body.push_back('\n');
  }
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size()
      << "\nproperty float x\nproperty float y\nproperty float z\nend_header\n"
      << body;
  if (!out) fail(errc::write_failure, path + ": write failed");
}

PointCloud read_point_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::read_failure, path + ": unreadable file");
  std::string line;
  if (!std::getline(in, line) || line != "ply") fail(errc::format_error, path + ": not a PLY file");
  long long count = -1;
  bool ascii = false;
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = (fmt == "ascii");
    } else if (word == "element") {
      std::string what;
      ls >> what >> count;
      if (what != "vertex") fail(errc::format_error, path + ": unsupported element '" + what + "'");
    }
  }
  if (!ascii) fail(errc::format_error, path + ": only ascii PLY supported");
  if (count < 0) fail(errc::format_error, path + ": missing vertex element");
  PointCloud cloud;
  cloud.points.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    std::string xs, ys, zs;
    if (!(in >> xs >> ys >> zs)) fail(errc::format_error, path + ": truncated vertex list");
    CloudPoint p;
    p.x = parse_float(xs, path);
    p.y = parse_float(ys, path);
    p.z = parse_float(zs, path);
    cloud.points.push_back(p);
  }
  return cloud;
}

}  // namespace fringescan
