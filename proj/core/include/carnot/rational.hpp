#ifndef CARNOT_RATIONAL_HPP
#define CARNOT_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace carnot {

/// Exact rational scalar. GMP keeps the canonical form (positive
/// denominator, reduced) as long as inputs are canonical, which the
/// helpers below guarantee.
using Rat = mpq_class;

using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parse "n" or "n/d" (arbitrary precision).
Rat rat_parse(const std::string& text);

/// Canonical text form "n" or "n/d", d > 0.
std::string rat_str(const Rat& q);

inline double to_double(const Rat& q) { return q.get_d(); }

inline bool is_zero(const RatVec& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

inline RatVec& add_scaled(RatVec& dst, const Rat& s, const RatVec& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
  return dst;
}

inline RatVec scaled(const RatVec& v, const Rat& s) {
  RatVec out(v);
  for (auto& c : out) c *= s;
  return out;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a);
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace carnot

#endif
