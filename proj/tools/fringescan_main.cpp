#include <string>
#include <vector>

#include "fringescan/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fringescan::cli::run(args);
}
