#pragma once

#include <string>
#include <vector>

namespace fringescan::cli {

// Full command-line entry point; argv-style arguments without the program
// name. Returns the process exit code (0 success, errc values on failure).
int run(const std::vector<std::string>& args);

}  // namespace fringescan::cli
