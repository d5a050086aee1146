#include "fringescan/io/stack_io.hpp"

#include "fringescan/io/pgm.hpp"

namespace fringescan {

FringeStack read_image_stack(const std::vector<std::string>& paths,
                             const std::vector<double>& shifts, double period) {
  FringeStack stack;
  stack.shifts = shifts;
  stack.period = period;
  stack.samples.reserve(paths.size());
  for (const auto& path : paths) stack.samples.push_back(read_pgm(path));
  stack.validate();
  return stack;
}

}  // namespace fringescan
