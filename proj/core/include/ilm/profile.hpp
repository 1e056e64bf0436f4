#pragma once

#include <vector>

namespace ilm {

// Real amplitudes on a finite window; sites outside the window are zero.
// core_begin/core_size locate the code sites inside `values`.
struct LatticeProfile {
  int offset = 0;
  std::vector<double> values;
  int core_begin = 0;
  int core_size = 0;

  int window() const { return static_cast<int>(values.size()); }
};

}  // namespace ilm
