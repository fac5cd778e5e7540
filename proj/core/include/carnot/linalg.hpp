#ifndef CARNOT_LINALG_HPP
#define CARNOT_LINALG_HPP

#include <optional>

#include "carnot/rational.hpp"

namespace carnot {

/// Dense matrix of exact rationals. Sizes in this library stay small
/// (dim <= 200), so a plain row-major vector of vectors is enough.
class RatMat {
 public:
  RatMat() = default;
  RatMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows, RatVec(cols, Rat(0))) {}

  static RatMat identity(size_t n);
  static RatMat from_rows(std::vector<RatVec> rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rat& operator()(size_t i, size_t j) { return a_[i][j]; }
  const Rat& operator()(size_t i, size_t j) const { return a_[i][j]; }

  const RatVec& row(size_t i) const { return a_[i]; }
  RatVec& row(size_t i) { return a_[i]; }
  RatVec col(size_t j) const;

  RatMat transpose() const;
  RatMat operator*(const RatMat& rhs) const;
  RatMat operator+(const RatMat& rhs) const;
  RatMat operator-(const RatMat& rhs) const;
  bool operator==(const RatMat& rhs) const { return a_ == rhs.a_; }

  /// Matrix-vector product.
  RatVec apply(const RatVec& v) const;
  /// Transposed product; covectors act from the left.
  RatVec apply_transposed(const RatVec& v) const;

  bool is_zero() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<RatVec> a_;
};

/// Fraction-free Gaussian elimination (Bareiss) with deterministic
/// pivoting: columns left to right, first row with a nonzero entry.
/// Row content is scaled to integers first so the single-step Bareiss
/// divisions stay exact.
struct Echelon {
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
  /// Echelon rows (integer entries), one per pivot, in pivot order.
  std::vector<RatVec> rows;
};

Echelon echelon_form(const RatMat& m);

size_t rank_of(const RatMat& m);

/// Exact determinant (square matrices) via Bareiss.
Rat determinant(const RatMat& m);

/// Basis of {x : m x = 0}, deterministic order (free columns left to right).
std::vector<RatVec> nullspace(const RatMat& m);

/// Reduce a list of vectors to an independent spanning subset/basis.
/// Returned vectors are the echelon rows (pivot-normalized to pivot 1).
std::vector<RatVec> span_basis(const std::vector<RatVec>& gens);

/// Indices of a maximal independent subset of the given vectors,
/// in input order (first-come pivots).
std::vector<size_t> independent_subset(const std::vector<RatVec>& gens);

/// One solution of m x = b, if any.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

/// True iff v lies in the span of the given (arbitrary) vectors.
bool in_span(const std::vector<RatVec>& gens, const RatVec& v);

}  // namespace carnot

#endif
