#include "fringescan/io/match_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "fringescan/core/error.hpp"

namespace fringescan {

void write_matches(const MatchList& matches, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::write_failure, path + ": unwritable path");
  std::string text;
  text.reserve(matches.size() * 24);
  char buf[64];
  for (const Match& m : matches) {
    text += std::to_string(m.u_left);
    text.push_back(' ');
    text += std::to_string(m.v);
    text.push_back(' ');
    auto r = std::to_chars(buf, buf + sizeof(buf), m.u_right);
    text.append(buf, r.ptr);
    text.push_back('\n');
  }
  out << text;
  if (!out) fail(errc::write_failure, path + ": write failed");
}

MatchList read_matches(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::read_failure, path + ": unreadable file");
  MatchList matches;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Match m;
    std::string extra;
    if (!(ls >> m.u_left >> m.v >> m.u_right) || (ls >> extra))
      fail(errc::format_error, path + ": malformed match line");
    matches.push_back(m);
  }
  return matches;
}

}  // namespace fringescan
