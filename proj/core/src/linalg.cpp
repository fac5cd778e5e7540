#include "carnot/linalg.hpp"

#include <stdexcept>

namespace carnot {

namespace {

void check_size(size_t a, size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("size mismatch in ") + what);
}

// Clear denominators of a row in place; the scaling keeps row spans.
void integerize(RatVec& row) {
  mpz_class l = 1;
  for (const auto& q : row) {
    if (q != 0) {
      mpz_class d = q.get_den();
      l = l / gcd(l, d) * d;
    }
  }
  if (l == 1) return;
  Rat s(l);
  for (auto& q : row) q *= s;
}

// Divide a row by the gcd of its entries to keep Bareiss numbers small.
void normalize_content(RatVec& row) {
  mpz_class g = 0;
  for (const auto& q : row) g = gcd(g, q.get_num());
  if (g == 0 || g == 1) return;
  Rat s(g);
  for (auto& q : row) q /= s;
}

}  // namespace

RatMat RatMat::identity(size_t n) {
  RatMat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::from_rows(std::vector<RatVec> rows) {
  RatMat m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m.cols_) throw std::invalid_argument("ragged rows");
  m.a_ = std::move(rows);
  return m;
}

RatVec RatMat::col(size_t j) const {
  RatVec out(rows_);
  for (size_t i = 0; i < rows_; ++i) out[i] = a_[i][j];
  return out;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = a_[i][j];
  return t;
}

RatMat RatMat::operator*(const RatMat& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  RatMat out(rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      if (a_[i][k] == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a_[i][k] * rhs(k, j);
    }
  return out;
}

RatMat RatMat::operator+(const RatMat& rhs) const {
  RatMat out = *this;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out(i, j) += rhs(i, j);
  return out;
}

RatMat RatMat::operator-(const RatMat& rhs) const {
  RatMat out = *this;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out(i, j) -= rhs(i, j);
  return out;
}

RatVec RatMat::apply(const RatVec& v) const {
  check_size(v.size(), cols_, "RatMat::apply");
  RatVec out(rows_, Rat(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (a_[i][j] != 0) out[i] += a_[i][j] * v[j];
  return out;
}

RatVec RatMat::apply_transposed(const RatVec& v) const {
  check_size(v.size(), rows_, "RatMat::apply_transposed");
  RatVec out(cols_, Rat(0));
  for (size_t i = 0; i < rows_; ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < cols_; ++j)
      if (a_[i][j] != 0) out[j] += v[i] * a_[i][j];
  }
  return out;
}

bool RatMat::is_zero() const {
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (a_[i][j] != 0) return false;
  return true;
}

Echelon echelon_form(const RatMat& m) {
  std::vector<RatVec> rows;
  rows.reserve(m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    RatVec r = m.row(i);
    integerize(r);
    normalize_content(r);
    rows.push_back(std::move(r));
  }

  Echelon e;
  Rat prev_pivot = 1;
  size_t top = 0;
  for (size_t col = 0; col < m.cols() && top < rows.size(); ++col) {
    size_t p = top;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[top], rows[p]);
    const Rat pivot = rows[top][col];
    for (size_t i = top + 1; i < rows.size(); ++i) {
      // Bareiss step: the division by the previous pivot is exact, and
      // every row below the pivot must be rescaled to keep it so.
      for (size_t j = 0; j < m.cols(); ++j) {
        if (j == col) continue;
        rows[i][j] = (pivot * rows[i][j] - rows[i][col] * rows[top][j]) / prev_pivot;
      }
      rows[i][col] = 0;
    }
    prev_pivot = pivot;
    e.pivot_cols.push_back(col);
    ++top;
  }
  e.rank = top;
  rows.resize(top);
  e.rows = std::move(rows);
  return e;
}

size_t rank_of(const RatMat& m) { return echelon_form(m).rank; }

Rat determinant(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const size_t n = m.rows();
  if (n == 0) return Rat(1);
  std::vector<RatVec> rows;
  for (size_t i = 0; i < n; ++i) rows.push_back(m.row(i));

  Rat scale = 1;  // product of row scalings applied while integerizing
  for (auto& r : rows) {
    mpz_class l = 1;
    for (const auto& q : r)
      if (q != 0) {
        mpz_class d = q.get_den();
        l = l / gcd(l, d) * d;
      }
    if (l != 1) {
      Rat s(l);
      for (auto& q : r) q *= s;
      scale *= s;
    }
  }

  Rat prev = 1;
  int sign = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t p = col;
    while (p < n && rows[p][col] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != col) {
      std::swap(rows[p], rows[col]);
      sign = -sign;
    }
    const Rat pivot = rows[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      for (size_t j = col + 1; j < n; ++j)
        rows[i][j] = (pivot * rows[i][j] - rows[i][col] * rows[col][j]) / prev;
      rows[i][col] = 0;
    }
    prev = pivot;
  }
  Rat det = rows[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det / scale;
}

std::vector<RatVec> nullspace(const RatMat& m) {
  Echelon e = echelon_form(m);
  const size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<RatVec> basis;
  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVec x(n, Rat(0));
    x[free_col] = 1;
    // back-substitute pivot variables from the bottom up
    for (size_t k = e.rank; k-- > 0;) {
      const RatVec& row = e.rows[k];
      const size_t pc = e.pivot_cols[k];
      Rat s = 0;
      for (size_t j = pc + 1; j < n; ++j)
        if (x[j] != 0 && row[j] != 0) s += row[j] * x[j];
      x[pc] = -s / row[pc];
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<RatVec> span_basis(const std::vector<RatVec>& gens) {
  if (gens.empty()) return {};
  Echelon e = echelon_form(RatMat::from_rows(gens));
  std::vector<RatVec> out;
  out.reserve(e.rank);
  for (size_t k = 0; k < e.rank; ++k) {
    RatVec r = e.rows[k];
    const Rat p = r[e.pivot_cols[k]];
    for (auto& q : r) q /= p;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<size_t> independent_subset(const std::vector<RatVec>& gens) {
  std::vector<size_t> chosen;
  std::vector<RatVec> acc;
  size_t rank = 0;
  for (size_t i = 0; i < gens.size(); ++i) {
    acc.push_back(gens[i]);
    const size_t r = rank_of(RatMat::from_rows(acc));
    if (r > rank) {
      rank = r;
      chosen.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  RatMat aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = echelon_form(aug);
  RatVec x(m.cols(), Rat(0));
  for (size_t k = e.rank; k-- > 0;) {
    const size_t pc = e.pivot_cols[k];
    if (pc == m.cols()) return std::nullopt;  // pivot in rhs column: inconsistent
    const RatVec& row = e.rows[k];
    Rat s = row[m.cols()];
    for (size_t j = pc + 1; j < m.cols(); ++j)
      if (x[j] != 0 && row[j] != 0) s -= row[j] * x[j];
    x[pc] = s / row[pc];
  }
  return x;
}

bool in_span(const std::vector<RatVec>& gens, const RatVec& v) {
  if (is_zero(v)) return true;
  if (gens.empty()) return false;
  std::vector<RatVec> cols = gens;
  return solve(RatMat::from_rows(cols).transpose(), v).has_value();
}

}  // namespace carnot
