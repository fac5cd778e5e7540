#include "carnot/numeric.hpp"

#include "dynkin.hpp"

namespace carnot {

NumericAlgebra::NumericAlgebra(AlgebraPtr alg)
    : alg_(std::move(alg)), dim_(alg_->dim()), rank_(alg_->rank()), step_(alg_->step()) {
  upper_.resize(static_cast<size_t>(dim_) * dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      auto& slot = upper_[static_cast<size_t>(i) * dim_ + j];
      for (const auto& [k, q] : alg_->bracket_basis(i, j)) {
        const double c = to_double(q);
        slot.push_back({k, c});
        triples_.push_back({i, j, k, c});
        triples_.push_back({j, i, k, -c});
      }
    }
  for (const auto& term : detail::dynkin_table(step_))
    dynkin_.push_back({term.letters, to_double(term.coeff)});
}

Vecd NumericAlgebra::bracket(const Vecd& x, const Vecd& y) const {
  Vecd out = Vecd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0 && y[i] == 0.0) continue;
    for (int j = i + 1; j < dim_; ++j) {
      const double w = x[i] * y[j] - x[j] * y[i];
      if (w == 0.0) continue;
      for (const auto& e : upper_[static_cast<size_t>(i) * dim_ + j]) out[e.k] += w * e.c;
    }
  }
  return out;
}

Matd NumericAlgebra::ad(const Vecd& x) const {
  Matd m = Matd::Zero(dim_, dim_);
  for (const auto& t : triples_) m(t.k, t.j) += x[t.i] * t.c;
  return m;
}

Matd NumericAlgebra::Ad(const Vecd& x) const {
  const Matd a = ad(x);
  Matd result = Matd::Identity(dim_, dim_);
  Matd power = Matd::Identity(dim_, dim_);
  double fact = 1.0;
  for (int k = 1; k < step_; ++k) {
    power = a * power;
    fact *= k;
    result += power / fact;
  }
  return result;
}

Vecd NumericAlgebra::bch(const Vecd& x, const Vecd& y) const {
  Vecd out = Vecd::Zero(dim_);
  std::map<std::vector<uint8_t>, Vecd> cache;
  auto eval = [&](auto&& self, const std::vector<uint8_t>& word) -> const Vecd& {
    auto it = cache.find(word);
    if (it != cache.end()) return it->second;
    Vecd value;
    if (word.size() == 1) {
      value = word[0] ? y : x;
    } else {
      std::vector<uint8_t> suffix(word.begin() + 1, word.end());
      value = bracket(word[0] ? y : x, self(self, suffix));
    }
    return cache.emplace(word, std::move(value)).first->second;
  };
  for (const auto& term : dynkin_) out += term.coeff * eval(eval, term.letters);
  return out;
}

Vecd NumericAlgebra::from_exact(const RatVec& v) const {
  Vecd out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

}  // namespace carnot
