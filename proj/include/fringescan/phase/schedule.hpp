#pragma once

#include <vector>

namespace fringescan {

// Reference phase shifts delta_n, radians. K >= 3 distinct shifts are needed
// for the three-parameter sinusoid solve.
struct ShiftSchedule {
  std::vector<double> deltas;

  int size() const { return static_cast<int>(deltas.size()); }

  // delta_n = 2*pi*n/N for n = 0..N-1. Stacks built through this function
  // share bit-identical shift values, which the uniform fast-path dispatch
  // relies on.
  static ShiftSchedule uniform(int steps);

  // True when deltas equal uniform(size()) bit-for-bit.
  bool is_uniform() const;
};

}  // namespace fringescan
