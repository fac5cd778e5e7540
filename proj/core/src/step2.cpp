#include "carnot/step2.hpp"

#include <bit>

namespace carnot {

size_t Bivector::pair_index(int r, int i, int j) {
  if (i > j) std::swap(i, j);
  // lexicographic position of (i,j), 0 <= i < j < r
  return static_cast<size_t>(i) * (2 * r - i - 1) / 2 + (j - i - 1);
}

RatMat Bivector::contraction() const {
  RatMat m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      m(i, j) = at(i, j);
      m(j, i) = -at(i, j);
    }
  return m;
}

bool Multivector::is_zero() const {
  for (const auto& [m, q] : comp)
    if (q != 0) return false;
  return true;
}

namespace {

/// Sign of merging two disjoint sorted index sets: parity of the number
/// of transpositions, counted bit by bit.
int merge_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  while (b != 0) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(a >> (j + 1));
  }
  return swaps % 2 == 0 ? 1 : -1;
}

Multivector wedge_power_or_unit(const Bivector& xi, int k) {
  if (k <= 0) return multivector_one(xi.r);
  return wedge_power(xi, k);
}

}  // namespace

Multivector wedge(const Multivector& a, const Multivector& b) {
  if (a.r != b.r) throw std::invalid_argument("wedge: rank mismatch");
  Multivector out;
  out.r = a.r;
  out.grade = a.grade + b.grade;
  if (out.grade > a.r) throw DegreeTooHighError();
  for (const auto& [ma, qa] : a.comp) {
    if (qa == 0) continue;
    for (const auto& [mb, qb] : b.comp) {
      if (qb == 0 || (ma & mb)) continue;
      const Rat term = qa * qb * merge_sign(ma, mb);
      Rat& slot = out.comp[ma | mb];
      slot += term;
      if (slot == 0) out.comp.erase(ma | mb);
    }
  }
  return out;
}

Multivector multivector_of(const Bivector& xi) {
  Multivector out;
  out.r = xi.r;
  out.grade = 2;
  for (int i = 0; i < xi.r; ++i)
    for (int j = i + 1; j < xi.r; ++j)
      if (xi.at(i, j) != 0) out.comp[(1u << i) | (1u << j)] = xi.at(i, j);
  return out;
}

Multivector multivector_of_vector(int r, const RatVec& v) {
  Multivector out;
  out.r = r;
  out.grade = 1;
  for (int i = 0; i < r; ++i)
    if (v[i] != 0) out.comp[1u << i] = v[i];
  return out;
}

Multivector multivector_one(int r) {
  Multivector out;
  out.r = r;
  out.grade = 0;
  out.comp[0] = 1;
  return out;
}

Multivector wedge_power(const Bivector& xi, int k) {
  if (k < 1 || 2 * k > xi.r) throw DegreeTooHighError();
  Multivector acc = multivector_of(xi);
  for (int i = 1; i < k; ++i) acc = wedge(acc, multivector_of(xi));
  return acc;
}

std::vector<RatVec> support(const Bivector& xi) {
  const RatMat m = xi.contraction();
  std::vector<RatVec> cols;
  for (int j = 0; j < xi.r; ++j) {
    RatVec c = m.col(j);
    if (!carnot::is_zero(c)) cols.push_back(std::move(c));
  }
  return span_basis(cols);
}

int rank2(const Step2Point& p) {
  std::vector<RatVec> gens = support(p.xi);
  if (!carnot::is_zero(p.v)) gens.push_back(p.v);
  if (gens.empty()) return 0;
  return static_cast<int>(rank_of(RatMat::from_rows(gens)));
}

bool is_abnormal_point(const Step2Point& p) { return rank2(p) <= p.rank() - 2; }

bool pfaffian_membership(const Step2Point& p) {
  const int r = p.rank();
  const int s = r / 2;
  if (r % 2 == 0) {
    // xi^s = 0 and v ^ xi^{s-1} = 0 (with xi^0 the unit scalar)
    if (!wedge_power_or_unit(p.xi, s).is_zero()) return false;
    const Multivector left = multivector_of_vector(r, p.v);
    return wedge(left, wedge_power_or_unit(p.xi, s - 1)).is_zero();
  }
  if (s == 0) return false;  // r = 1: rank(v, xi) <= -1 is impossible
  return wedge_power_or_unit(p.xi, s).is_zero();
}

Step2Stratum stratum(const Step2Point& p) {
  const int r = p.rank();
  if (r % 2 != 0) throw OddRankError();
  const auto supp = support(p.xi);
  const int rank_xi = static_cast<int>(supp.size());
  if (rank_xi == r - 2) {
    if (in_span(supp, p.v)) return Step2Stratum::Y;
    return Step2Stratum::NotAbnormal;
  }
  if (rank_xi < r - 2) return Step2Stratum::Y1;
  return Step2Stratum::NotAbnormal;
}

const char* stratum_name(Step2Stratum s) {
  switch (s) {
    case Step2Stratum::Y: return "Y";
    case Step2Stratum::Y1: return "Y1";
    case Step2Stratum::NotAbnormal: return "NotAbnormal";
  }
  return "?";
}

std::vector<RatVec> h_lambda(const Covector& lambda) {
  const auto& alg = *lambda.alg;
  if (alg.step() > 2) throw std::invalid_argument("h_lambda is a step <= 2 construction");
  bool nonzero_top = false;
  if (alg.step() == 2)
    for (int i = alg.layer_begin(2); i < alg.layer_end(2); ++i)
      if (lambda.c[i] != 0) nonzero_top = true;
  if (!nonzero_top) throw ZeroCovectorError();

  const std::vector<RatVec> kernel = w_kernel(lambda);  // vectors of length r
  const int n = alg.dim();
  std::vector<RatVec> gens;
  for (const auto& k : kernel) {
    RatVec e(n, Rat(0));
    for (int i = 0; i < alg.rank(); ++i) e[i] = k[i];
    gens.push_back(std::move(e));
  }
  const size_t first_layer_count = gens.size();
  for (size_t a = 0; a < first_layer_count; ++a)
    for (size_t b = a + 1; b < first_layer_count; ++b) {
      RatVec br = alg.bracket(gens[a], gens[b]);
      if (!carnot::is_zero(br)) gens.push_back(std::move(br));
    }
  return span_basis(gens);
}

std::vector<RatVec> subgroup_descent(const Step2Point& p) {
  if (!is_abnormal_point(p)) throw NotAbnormalError();
  std::vector<RatVec> gens = support(p.xi);
  if (!carnot::is_zero(p.v)) gens.push_back(p.v);
  return span_basis(gens);
}

std::vector<DarbouxTerm> darboux_decompose(const Bivector& xi) {
  const int r = xi.r;
  RatMat S = xi.contraction();
  std::vector<DarbouxTerm> terms;
  for (;;) {
    int p = -1, q = -1;
    for (int i = 0; i < r && p < 0; ++i)
      for (int j = i + 1; j < r; ++j)
        if (S(i, j) != 0) {
          p = i;
          q = j;
          break;
        }
    if (p < 0) break;
    const Rat c = S(p, q);
    const RatVec a = S.col(q);
    const RatVec b = S.col(p);
    // S' = S + (1/c)(a b^T - b a^T) kills the span of rows/cols p, q
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) S(i, j) += (a[i] * b[j] - b[i] * a[j]) / c;
    terms.push_back({Rat(-1) / c, a, b});
  }
  return terms;
}

PiecewiseControl reaching_control(const AlgebraPtr& free_step2, const Step2Point& p) {
  const int r = p.rank();
  if (free_step2->rank() != r || free_step2->step() != 2)
    throw std::invalid_argument("reaching_control: need the free step-2 algebra of matching rank");

  std::vector<RatVec> values;  // unit-time exponents; scaled to segments below
  auto push = [&](const RatVec& w, const Rat& scale) {
    RatVec full(free_step2->dim(), Rat(0));
    for (int i = 0; i < r; ++i) full[i] = scale * w[i];
    values.push_back(std::move(full));
  };
  for (const auto& term : darboux_decompose(p.xi)) {
    // commutator rectangle: exp(a') exp(b') exp(-a') exp(-b') = exp(a' ^ b')
    push(term.a, term.c);
    push(term.b, Rat(1));
    push(term.a, -term.c);
    push(term.b, Rat(-1));
  }
  if (!carnot::is_zero(p.v) || values.empty()) push(p.v, Rat(1));

  // scale each exponent by the segment count so unit-length segments
  // of the uniform grid integrate to the intended exponentials
  const Rat k(static_cast<long>(values.size()));
  for (auto& v : values)
    for (auto& c : v) c *= k;
  return PiecewiseControl::uniform(free_step2, std::move(values));
}

GroupElement to_group_element(const AlgebraPtr& free_step2, const Step2Point& p) {
  const int r = p.rank();
  if (free_step2->rank() != r || free_step2->step() != 2)
    throw std::invalid_argument("to_group_element: need the free step-2 algebra of rank r");
  RatVec log(free_step2->dim(), Rat(0));
  for (int i = 0; i < r; ++i) log[i] = p.v[i];
  // e_i ^ e_j = [e_i, e_j]; expand over the degree-2 Hall words
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const Rat& c = p.xi.at(i, j);
      if (c == 0) continue;
      for (const auto& [k, q] : free_step2->bracket_basis(i, j)) log[k] += c * q;
    }
  return GroupElement(free_step2, std::move(log));
}

Step2Point from_group_element(const GroupElement& g) {
  const auto& alg = *g.alg;
  if (alg.step() != 2 || !alg.is_free())
    throw std::invalid_argument("from_group_element: need a free step-2 algebra");
  const int r = alg.rank();
  Step2Point p;
  p.v.assign(g.log.begin(), g.log.begin() + r);
  p.xi = Bivector(r);
  for (int k = r; k < alg.dim(); ++k) {
    const auto& w = alg.hall()[k];
    // X_{ji} = [e_j, e_i] with j > i, i.e. -(e_i ^ e_j)
    const int j = alg.hall()[w.left].generator - 1;
    const int i = alg.hall()[w.right].generator - 1;
    p.xi.at(i, j) -= g.log[k];
  }
  return p;
}

int codim_certificate(const Step2Point& sample, double sv_tol) {
  const int r = sample.rank();
  if (r % 2 != 0) throw OddRankError();
  if (stratum(sample) != Step2Stratum::Y) throw SampleNotInYError();
  const int s = r / 2;
  const int nvars = r + r * (r - 1) / 2;

  // rows: the Pfaffian equation xi^s (one component) and the r
  // components of v ^ xi^{s-1}; exact gradients, then numeric rank
  std::vector<RatVec> rows;

  const Multivector xis1 = wedge_power_or_unit(sample.xi, s - 1);
  const Multivector xis2 = s >= 2 ? wedge_power_or_unit(sample.xi, s - 2) : multivector_one(r);
  const Multivector v_mv = multivector_of_vector(r, sample.v);

  auto basis_pair = [&](int a, int b) {
    Multivector m;
    m.r = r;
    m.grade = 2;
    m.comp[(1u << a) | (1u << b)] = 1;
    return m;
  };
  auto basis_vec = [&](int c) {
    Multivector m;
    m.r = r;
    m.grade = 1;
    m.comp[1u << c] = 1;
    return m;
  };

  {  // d(xi^s)
    RatVec row(nvars, Rat(0));
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b) {
        const Multivector grad = wedge(basis_pair(a, b), xis1);
        const uint32_t full = (1u << r) - 1;
        auto it = grad.comp.find(full);
        if (it != grad.comp.end()) row[r + Bivector::pair_index(r, a, b)] = Rat(s) * it->second;
      }
    rows.push_back(std::move(row));
  }

  // d(v ^ xi^{s-1}): one row per component of Lambda^{r-1}
  const uint32_t full = (1u << r) - 1;
  for (int miss = 0; miss < r; ++miss) {
    const uint32_t key = full ^ (1u << miss);
    RatVec row(nvars, Rat(0));
    for (int c = 0; c < r; ++c) {
      const Multivector grad = wedge(basis_vec(c), xis1);
      auto it = grad.comp.find(key);
      if (it != grad.comp.end()) row[c] = it->second;
    }
    if (s >= 2) {
      for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
          const Multivector grad = wedge(v_mv, wedge(basis_pair(a, b), xis2));
          auto it = grad.comp.find(key);
          if (it != grad.comp.end())
            row[r + Bivector::pair_index(r, a, b)] = Rat(s - 1) * it->second;
        }
    }
    rows.push_back(std::move(row));
  }

  Matd jac(rows.size(), nvars);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < nvars; ++j) jac(i, j) = to_double(rows[i][j]);
  Eigen::JacobiSVD<Matd> svd(jac);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > sv_tol * std::max(1.0, sv[0])) ++rank;
  return rank;
}

size_t equivalence_grid_scan(int r) {
  if (r < 2 || r > 5) throw std::invalid_argument("equivalence_grid_scan covers r = 2..5");
  const int nv = r;
  const int nx = r * (r - 1) / 2;
  const int n = nv + nx;
  std::vector<int> coord(n, -1);

  // int64 arithmetic is exact here: entries are in {-1,0,1}, wedge
  // coefficients stay below s! * 3^s and Bareiss minors below the
  // Hadamard bound of tiny matrices.
  size_t count = 0;
  for (;;) {
    ++count;
    // rank(v, xi) via integer Gaussian elimination on [S | v]
    {
      long long m[16][17];
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m[i][j] = 0;
        m[i][r] = coord[i];
      }
      for (int i = 0, p = nv; i < r; ++i)
        for (int j = i + 1; j < r; ++j, ++p) {
          m[i][j] = coord[p];
          m[j][i] = -coord[p];
        }
      int rank = 0;
      long long prev = 1;
      for (int col = 0; col <= r && rank < r; ++col) {
        int piv = -1;
        for (int i = rank; i < r; ++i)
          if (m[i][col] != 0) {
            piv = i;
            break;
          }
        if (piv < 0) continue;
        for (int j = 0; j <= r; ++j) std::swap(m[rank][j], m[piv][j]);
        const long long pv = m[rank][col];
        for (int i = rank + 1; i < r; ++i) {
          for (int j = 0; j <= r; ++j) {
            if (j == col) continue;
            m[i][j] = (pv * m[i][j] - m[i][col] * m[rank][j]) / prev;
          }
          m[i][col] = 0;
        }
        prev = pv;
        ++rank;
      }
      const bool rank_route = rank <= r - 2;

      // wedge route
      bool wedge_route;
      const int s = r / 2;
      auto xi_at = [&](int i, int j) -> long long {
        if (i == j) return 0;
        const bool flip = i > j;
        if (flip) std::swap(i, j);
        const long long v = coord[nv + static_cast<int>(Bivector::pair_index(r, i, j))];
        return flip ? -v : v;
      };
      // xi^s and xi^{s-1} over subsets, dense per grade
      // grade 2k subsets of r <= 5: enumerate via masks
      auto wedge_power_zero = [&](int k) -> bool {
        if (k == 0) return false;  // unit
        // accumulate coefficients of xi^k by iterating perfect
        // matchings of every 2k-subset
        for (uint32_t mask = 0; mask < (1u << r); ++mask) {
          if (std::popcount(mask) != 2 * k) continue;
          int idx[10], c = 0;
          for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) idx[c++] = i;
          // sum over matchings with sign; k <= 2 here so direct
          long long total = 0;
          if (k == 1) {
            total = xi_at(idx[0], idx[1]);
          } else {  // k == 2, factor 2 from expanding the square
            total = 2 * (xi_at(idx[0], idx[1]) * xi_at(idx[2], idx[3]) -
                         xi_at(idx[0], idx[2]) * xi_at(idx[1], idx[3]) +
                         xi_at(idx[0], idx[3]) * xi_at(idx[1], idx[2]));
          }
          if (total != 0) return false;
        }
        return true;
      };
      auto v_wedge_power_zero = [&](int k) -> bool {
        // v ^ xi^k over (2k+1)-subsets
        for (uint32_t mask = 0; mask < (1u << r); ++mask) {
          if (std::popcount(mask) != 2 * k + 1) continue;
          int idx[10], c = 0;
          for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) idx[c++] = i;
          long long total = 0;
          for (int drop = 0; drop < c; ++drop) {
            const long long vc = coord[idx[drop]];
            if (vc == 0) continue;
            int rest[10], rc = 0;
            for (int i = 0; i < c; ++i)
              if (i != drop) rest[rc++] = idx[i];
            long long w;
            if (k == 0) {
              w = 1;
            } else if (k == 1) {
              w = xi_at(rest[0], rest[1]);
            } else {  // k == 2
              w = 2 * (xi_at(rest[0], rest[1]) * xi_at(rest[2], rest[3]) -
                       xi_at(rest[0], rest[2]) * xi_at(rest[1], rest[3]) +
                       xi_at(rest[0], rest[3]) * xi_at(rest[1], rest[2]));
            }
            const int sign = drop % 2 == 0 ? 1 : -1;
            total += sign * vc * w;
          }
          if (total != 0) return false;
        }
        return true;
      };

      if (r % 2 == 0) {
        wedge_route = wedge_power_zero(s) && v_wedge_power_zero(s - 1);
      } else {
        wedge_route = wedge_power_zero(s);
      }

      if (rank_route != wedge_route)
        throw Error("step-2 equivalence oracle disagreement on a grid point");
    }

    // next grid point
    int pos = 0;
    while (pos < n && coord[pos] == 1) coord[pos++] = -1;
    if (pos == n) break;
    ++coord[pos];
  }
  return count;
}

}  // namespace carnot
