#ifndef CARNOT_TEST_SUPPORT_HPP
#define CARNOT_TEST_SUPPORT_HPP

#include <random>

#include "carnot/group.hpp"

namespace carnot::testutil {

/// Deterministic random rationals: numerators in [-9, 9], denominators
/// in {1, 2, 3}.
class RatGen {
 public:
  explicit RatGen(uint64_t seed) : rng_(seed) {}

  Rat operator()() {
    const long num = static_cast<long>(rng_() % 19) - 9;
    const long den = static_cast<long>(rng_() % 3) + 1;
    return rat(num, den);
  }

  RatVec vec(size_t n) {
    RatVec v(n);
    for (auto& c : v) c = (*this)();
    return v;
  }

  /// Vector supported on the first layer only.
  RatVec horizontal(const AlgebraPtr& alg) {
    RatVec v(alg->dim(), Rat(0));
    for (int i = 0; i < alg->rank(); ++i) v[i] = (*this)();
    return v;
  }

  uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace carnot::testutil

#endif
