#ifndef CARNOT_SRC_DYNKIN_HPP
#define CARNOT_SRC_DYNKIN_HPP

#include <cstdint>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot::detail {

/// One surviving word of the Dynkin series for log(exp x exp y):
/// letters over {0 = x, 1 = y} with the accumulated coefficient.
/// Words whose right-nested bracket vanishes identically (repeated
/// innermost letter) are dropped.
struct DynkinTerm {
  std::vector<uint8_t> letters;
  Rat coeff;
  int y_count = 0;
};

/// Shared per-step table; thread-safe, computed once.
const std::vector<DynkinTerm>& dynkin_table(int step);

}  // namespace carnot::detail

#endif
