#include "carnot/varieties.hpp"

namespace carnot {

Rat eval_extremal_poly(const Covector& lambda, int i, const GroupElement& g) {
  require_same_algebra(lambda.alg, g.alg);
  return coadjoint(g, lambda).c[i];
}

RatVec extremal_poly_values(const Covector& lambda, const GroupElement& g) {
  require_same_algebra(lambda.alg, g.alg);
  return coadjoint(g, lambda).c;
}

std::map<std::vector<int>, Rat> expand_extremal_poly(const Covector& lambda, int i, int max_dim) {
  const auto& alg = *lambda.alg;
  const int n = alg.dim();
  if (n > max_dim)
    throw ResourceLimitError(static_cast<size_t>(n), static_cast<size_t>(max_dim));

  // P^lambda_i(exp X) = lambda(e^{ad_X} e_i): expand the nested
  // brackets symbolically, with X = sum x_m e_m and one monomial per
  // sequence of basis choices.
  std::map<std::vector<int>, Rat> poly;  // multidegree over x_1..x_n
  struct Term {
    RatVec v;
    std::vector<int> degree;
    Rat coeff;
  };
  std::vector<Term> frontier;
  frontier.push_back({alg.basis_vector(i), std::vector<int>(n, 0), Rat(1)});
  Rat fact(1);
  for (int depth = 0; depth < alg.step(); ++depth) {
    for (const auto& t : frontier) {
      const Rat value = dot(lambda.c, t.v) * t.coeff / fact;
      if (value != 0) poly[t.degree] += value;
    }
    std::vector<Term> next;
    for (const auto& t : frontier)
      for (int m = 0; m < n; ++m) {
        RatVec bm = alg.bracket(alg.basis_vector(m), t.v);
        if (carnot::is_zero(bm)) continue;
        Term nt;
        nt.v = std::move(bm);
        nt.degree = t.degree;
        nt.degree[m] += 1;
        nt.coeff = t.coeff;
        next.push_back(std::move(nt));
      }
    frontier = std::move(next);
    fact *= depth + 1;
  }
  for (auto it = poly.begin(); it != poly.end();)
    it = it->second == 0 ? poly.erase(it) : std::next(it);
  return poly;
}

bool in_abnormal_variety(const Covector& lambda, const GroupElement& g) {
  if (lambda.is_zero()) throw ZeroCovectorError();
  const RatVec values = extremal_poly_values(lambda, g);
  for (int i = 0; i < lambda.alg->rank(); ++i)
    if (values[i] != 0) return false;
  return true;
}

SkewForm w_form(const Covector& lambda) {
  const auto& alg = *lambda.alg;
  const int r = alg.rank();
  RatMat m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Rat v = 0;
      for (const auto& [k, q] : alg.bracket_basis(i, j)) v += lambda.c[k] * q;
      m(i, j) = v;
      m(j, i) = -v;
    }
  return SkewForm{lambda.alg, std::move(m)};
}

std::vector<RatVec> w_kernel(const Covector& lambda) {
  return nullspace(w_form(lambda).m);
}

bool W_lambda_contains(const Covector& lambda, const GroupElement& g) {
  require_same_algebra(lambda.alg, g.alg);
  const auto& alg = *lambda.alg;
  const RatVec values = extremal_poly_values(lambda, g);
  const int s = alg.step();
  const int layer = s > 1 ? s - 1 : 1;
  for (int i = alg.layer_begin(layer); i < alg.layer_end(layer); ++i)
    if (values[i] != 0) return false;
  return true;
}

Rat goh_residual(const Covector& lambda, const std::vector<GroupElement>& trajectory) {
  if (trajectory.empty()) throw EmptyTrajectoryError();
  const auto& alg = *lambda.alg;
  const int r = alg.rank();

  // basis of V_1 + [V_1, V_1]
  std::vector<RatVec> dirs;
  for (int i = 0; i < r; ++i) dirs.push_back(alg.basis_vector(i));
  {
    std::vector<RatVec> brackets;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        RatVec b(alg.dim(), Rat(0));
        for (const auto& [k, q] : alg.bracket_basis(i, j)) b[k] = q;
        if (!carnot::is_zero(b)) brackets.push_back(std::move(b));
      }
    for (auto& b : span_basis(brackets)) dirs.push_back(std::move(b));
  }

  Rat worst(0);
  for (const auto& g : trajectory) {
    require_same_algebra(lambda.alg, g.alg);
    const Covector pulled = coadjoint(g, lambda);
    for (const auto& d : dirs) {
      Rat v = abs(dot(pulled.c, d));
      if (v > worst) worst = v;
    }
  }
  return worst;
}

}  // namespace carnot
