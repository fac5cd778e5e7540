#include "carnot/group.hpp"

#include <mutex>

#include "dynkin.hpp"

namespace carnot {

namespace detail {

/// The per-degree Dynkin coefficient table depends only on the
/// truncation step, so it is computed once and shared.
const std::vector<DynkinTerm>& dynkin_table(int step) {
  static std::mutex mu;
  static std::map<int, std::vector<DynkinTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(step);
  if (it != cache.end()) return it->second;

  std::map<std::vector<uint8_t>, Rat> words;

  // iterate over block sequences ((p_1,q_1),...,(p_n,q_n)), p_i+q_i>=1
  std::vector<std::pair<int, int>> blocks;
  auto emit = [&](int total) {
    const int n = static_cast<int>(blocks.size());
    Rat denom_fact(1);
    for (const auto& [p, q] : blocks) {
      for (int k = 2; k <= p; ++k) denom_fact *= k;
      for (int k = 2; k <= q; ++k) denom_fact *= k;
    }
    Rat coeff = Rat((n % 2 == 0) ? -1 : 1) / (Rat(n) * Rat(total) * denom_fact);
    std::vector<uint8_t> w;
    for (const auto& [p, q] : blocks) {
      w.insert(w.end(), p, 0);
      w.insert(w.end(), q, 1);
    }
    words[w] += coeff;
  };
  // depth-first enumeration of block sequences with total degree <= step
  auto rec = [&](auto&& self, int total) -> void {
    if (total > 0) emit(total);
    if (total >= step) return;
    for (int d = 1; total + d <= step; ++d)
      for (int p = 0; p <= d; ++p) {
        blocks.emplace_back(p, d - p);
        self(self, total + d);
        blocks.pop_back();
      }
  };
  rec(rec, 0);

  std::vector<DynkinTerm> table;
  for (auto& [w, c] : words) {
    if (c == 0) continue;
    const size_t m = w.size();
    if (m >= 2 && w[m - 1] == w[m - 2]) continue;  // innermost bracket vanishes
    DynkinTerm t;
    t.letters = w;
    t.coeff = c;
    for (uint8_t l : w) t.y_count += l;
    table.push_back(std::move(t));
  }
  return cache.emplace(step, std::move(table)).first->second;
}

}  // namespace detail

namespace {

using detail::dynkin_table;

/// Right-nested bracket [w_1,[w_2,[...,w_m]]] with letters substituted
/// by x and y; suffix values are memoized across the whole table.
class WordEvaluator {
 public:
  WordEvaluator(const CarnotAlgebra& alg, const RatVec& x, const RatVec& y)
      : alg_(alg), x_(x), y_(y) {}

  const RatVec& eval(const std::vector<uint8_t>& word) {
    auto it = cache_.find(word);
    if (it != cache_.end()) return it->second;
    RatVec value;
    if (word.size() == 1) {
      value = word[0] ? y_ : x_;
    } else {
      std::vector<uint8_t> suffix(word.begin() + 1, word.end());
      const RatVec& inner = eval(suffix);
      value = alg_.bracket(word[0] ? y_ : x_, inner);
    }
    return cache_.emplace(word, std::move(value)).first->second;
  }

 private:
  const CarnotAlgebra& alg_;
  const RatVec& x_;
  const RatVec& y_;
  std::map<std::vector<uint8_t>, RatVec> cache_;
};

}  // namespace

GroupElement::GroupElement(AlgebraPtr a, RatVec coords) : alg(std::move(a)), log(std::move(coords)) {
  if (static_cast<int>(log.size()) != alg->dim())
    throw std::invalid_argument("GroupElement: coordinate vector length != dim");
}

bool operator==(const GroupElement& g, const GroupElement& h) {
  return g.alg == h.alg && g.log == h.log;
}

Covector::Covector(AlgebraPtr a, RatVec coeffs) : alg(std::move(a)), c(std::move(coeffs)) {
  if (static_cast<int>(c.size()) != alg->dim())
    throw std::invalid_argument("Covector: coefficient vector length != dim");
}

GroupElement bch_product(const GroupElement& g, const GroupElement& h) {
  require_same_algebra(g.alg, h.alg);
  const auto& alg = *g.alg;
  RatVec out(alg.dim(), Rat(0));
  WordEvaluator eval(alg, g.log, h.log);
  for (const auto& term : dynkin_table(alg.step())) {
    const RatVec& v = eval.eval(term.letters);
    if (!carnot::is_zero(v)) add_scaled(out, term.coeff, v);
  }
  return GroupElement(g.alg, std::move(out));
}

RatMat adjoint(const GroupElement& g) {
  const auto& alg = *g.alg;
  const int n = alg.dim();
  RatMat ad = alg.ad(g.log);
  RatMat result = RatMat::identity(n);
  RatMat power = RatMat::identity(n);
  Rat fact(1);
  for (int k = 1; k < alg.step(); ++k) {
    power = ad * power;
    fact *= k;
    if (power.is_zero()) break;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (power(i, j) != 0) result(i, j) += power(i, j) / fact;
  }
  return result;
}

Covector coadjoint(const GroupElement& g, const Covector& lambda) {
  require_same_algebra(g.alg, lambda.alg);
  return Covector(g.alg, adjoint(g).apply_transposed(lambda.c));
}

std::vector<RatVec> bch_series_in_t(const AlgebraPtr& alg, const RatVec& x, const RatVec& y,
                                    bool t_on_left) {
  const int n = alg->dim();
  std::vector<RatVec> buckets(alg->step() + 1, RatVec(n, Rat(0)));
  WordEvaluator eval(*alg, x, y);
  for (const auto& term : dynkin_table(alg->step())) {
    const RatVec& v = eval.eval(term.letters);
    if (carnot::is_zero(v)) continue;
    const int deg = t_on_left ? static_cast<int>(term.letters.size()) - term.y_count
                              : term.y_count;
    add_scaled(buckets[deg], term.coeff, v);
  }
  return buckets;
}

RatVec left_translation_differential(const GroupElement& g, const RatVec& v) {
  return bch_series_in_t(g.alg, g.log, v, false)[1];
}

RatVec right_translation_differential(const GroupElement& g, const RatVec& v) {
  // R_g(h) = h g, so differentiate log(exp(tv) exp(g)) at t = 0.
  return bch_series_in_t(g.alg, v, g.log, true)[1];
}

}  // namespace carnot
