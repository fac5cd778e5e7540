#ifndef CARNOT_HALL_HPP
#define CARNOT_HALL_HPP

#include <string>
#include <vector>

namespace carnot {

/// One word of a classical Hall set. A word is either a generator
/// (left == -1) or an admissible pair of earlier words; indices refer
/// to positions in the enclosing word list.
struct HallWord {
  int left = -1;
  int right = -1;
  int generator = 0;  // 1-based, meaningful iff left == -1
  int degree = 1;
  std::string label;  // e.g. "X2111"; concatenated generator indices
};

/// Dimension of the degree-d layer of the free Lie algebra on r
/// generators (necklace count).
long witt_dimension(int r, int d);

/// Hall words of degree <= step, ordered by degree and then
/// lexicographically by (left index, right index); generators come
/// first in index order. This normalization reproduces the customary
/// textbook bases for small rank and step.
std::vector<HallWord> hall_words(int r, int step);

}  // namespace carnot

#endif
