#include "carnot/prolong.hpp"

namespace carnot {

Prolongation::Prolongation(AlgebraPtr alg) : alg_(std::move(alg)), r_(alg_->rank()) {
  ext_.reserve(static_cast<size_t>(r_) * r_);
  for (int a = 0; a < r_; ++a)
    for (int b = 0; b < r_; ++b) {
      RatMat e(r_, r_);
      e(a, b) = 1;
      ext_.push_back(extend_derivation(alg_, e).m);
    }
}

ProlongedElement Prolongation::zero() const {
  return ProlongedElement{RatMat(r_, r_), alg_->zero()};
}

ProlongedElement Prolongation::embed_base(const RatVec& x) const {
  return ProlongedElement{RatMat(r_, r_), x};
}

ProlongedElement Prolongation::embed_h(const RatMat& m) const {
  return ProlongedElement{m, alg_->zero()};
}

RatVec Prolongation::apply_derivation(const RatMat& m, const RatVec& x) const {
  RatVec out(alg_->dim(), Rat(0));
  for (int a = 0; a < r_; ++a)
    for (int b = 0; b < r_; ++b) {
      if (m(a, b) == 0) continue;
      add_scaled(out, m(a, b), ext_[static_cast<size_t>(a) * r_ + b].apply(x));
    }
  return out;
}

ProlongedElement Prolongation::bracket(const ProlongedElement& a, const ProlongedElement& b) const {
  ProlongedElement out;
  out.h = a.h * b.h - b.h * a.h;
  out.x = alg_->bracket(a.x, b.x);
  add_scaled(out.x, Rat(1), apply_derivation(a.h, b.x));
  add_scaled(out.x, Rat(-1), apply_derivation(b.h, a.x));
  return out;
}

RatVec Prolongation::flatten(const ProlongedElement& e) const {
  RatVec f;
  f.reserve(total_dim());
  for (int a = 0; a < r_; ++a)
    for (int b = 0; b < r_; ++b) f.push_back(e.h(a, b));
  for (const auto& c : e.x) f.push_back(c);
  return f;
}

ProlongedElement Prolongation::unflatten(const RatVec& f) const {
  ProlongedElement e = zero();
  size_t p = 0;
  for (int a = 0; a < r_; ++a)
    for (int b = 0; b < r_; ++b) e.h(a, b) = f[p++];
  for (int i = 0; i < alg_->dim(); ++i) e.x[i] = f[p++];
  return e;
}

std::vector<ProlongedElement> Prolongation::adjoint_orbit(
    const ProlongedElement& zeta, const std::vector<ProlongedElement>& targets) const {
  std::vector<ProlongedElement> out;
  out.reserve(targets.size());
  const int cap = total_dim() + 1;
  for (const auto& t : targets) {
    ProlongedElement acc = t;
    ProlongedElement term = t;
    Rat fact(1);
    int k = 0;
    for (;;) {
      term = bracket(zeta, term);
      if (term.h.is_zero() && carnot::is_zero(term.x)) break;
      ++k;
      if (k > cap) throw NonNilpotentProlongationError();
      fact *= k;
      for (int a = 0; a < r_; ++a)
        for (int b = 0; b < r_; ++b) acc.h(a, b) += term.h(a, b) / fact;
      add_scaled(acc.x, Rat(1) / fact, term.x);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

bool Prolongation::jacobi_holds() const {
  const int n = total_dim();
  std::vector<ProlongedElement> basis;
  basis.reserve(n);
  for (int a = 0; a < r_; ++a)
    for (int b = 0; b < r_; ++b) {
      RatMat m(r_, r_);
      m(a, b) = 1;
      basis.push_back(embed_h(m));
    }
  for (int i = 0; i < alg_->dim(); ++i) basis.push_back(embed_base(alg_->basis_vector(i)));

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ProlongedElement bij = bracket(basis[i], basis[j]);
      for (int k = j + 1; k < n; ++k) {
        ProlongedElement sum = bracket(bij, basis[k]);
        const ProlongedElement t2 = bracket(bracket(basis[j], basis[k]), basis[i]);
        const ProlongedElement t3 = bracket(bracket(basis[k], basis[i]), basis[j]);
        sum.h = sum.h + t2.h + t3.h;
        add_scaled(sum.x, Rat(1), t2.x);
        add_scaled(sum.x, Rat(1), t3.x);
        if (!sum.h.is_zero() || !carnot::is_zero(sum.x)) return false;
      }
    }
  return true;
}

namespace {

/// Basis of h + V_1 as prolonged elements.
std::vector<ProlongedElement> h_plus_v1(const Prolongation& P) {
  std::vector<ProlongedElement> out;
  const int r = P.base()->rank();
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      RatMat m(r, r);
      m(a, b) = 1;
      out.push_back(P.embed_h(m));
    }
  for (int i = 0; i < r; ++i) out.push_back(P.embed_base(P.base()->basis_vector(i)));
  return out;
}

CriterionResult rank_test(const Prolongation& P, std::vector<RatVec> rows) {
  CriterionResult res;
  res.dim = P.total_dim();
  res.rank = rank_of(RatMat::from_rows(rows));
  res.holds = res.rank == res.dim;
  return res;
}

}  // namespace

CriterionResult criterion_infinitesimal(const Prolongation& P, const ProlongedElement& xi) {
  std::vector<RatVec> rows;
  const auto gens = h_plus_v1(P);
  for (const auto& g : gens) rows.push_back(P.flatten(g));
  for (const auto& g : gens) rows.push_back(P.flatten(P.bracket(xi, g)));
  return rank_test(P, std::move(rows));
}

CriterionResult criterion_group(const Prolongation& P, const ProlongedElement& zeta) {
  std::vector<RatVec> rows;
  const auto gens = h_plus_v1(P);
  for (const auto& g : gens) rows.push_back(P.flatten(g));
  // Ad_{p^-1} = e^{ad_{-zeta}} for p = exp(zeta)
  ProlongedElement minus = zeta;
  for (int a = 0; a < P.base()->rank(); ++a)
    for (int b = 0; b < P.base()->rank(); ++b) minus.h(a, b) = -minus.h(a, b);
  for (auto& c : minus.x) c = -c;
  for (const auto& moved : P.adjoint_orbit(minus, gens)) rows.push_back(P.flatten(moved));
  return rank_test(P, std::move(rows));
}

LieElement contact_field_eval(const Prolongation& P, const ProlongedElement& X,
                              const GroupElement& g) {
  require_same_algebra(P.base(), g.alg);
  const ProlongedElement minus_log = P.embed_base(scaled(g.log, Rat(-1)));
  const auto moved = P.adjoint_orbit(minus_log, {X});
  return LieElement(g.alg, moved.front().x);
}

bool sard_set_membership(const Prolongation& P, const GroupElement& g) {
  require_same_algebra(P.base(), g.alg);
  const auto& alg = *P.base();
  const int r = alg.rank();
  std::vector<ProlongedElement> targets = h_plus_v1(P);
  const ProlongedElement minus_log = P.embed_base(scaled(g.log, Rat(-1)));
  const auto moved = P.adjoint_orbit(minus_log, targets);

  std::vector<RatVec> rows;
  for (int i = 0; i < r; ++i) rows.push_back(alg.basis_vector(i));
  for (const auto& e : moved) rows.push_back(e.x);  // pi_g drops the h part
  return rank_of(RatMat::from_rows(rows)) == static_cast<size_t>(alg.dim());
}

RatVec sample_xi(const Prolongation& P, uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<uint64_t>(seed), static_cast<uint64_t>(trial)};
  std::mt19937_64 rng(seq);
  RatVec xi(P.base()->dim());
  // integer box [-9, 9]; drawn directly from the engine so the stream
  // does not depend on a library's distribution mapping
  for (auto& c : xi) c = Rat(static_cast<long>(rng() % 19) - 9);
  return xi;
}

SamplerReport generic_sampler(const Prolongation& P, int trials, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("generic_sampler: trials >= 1");
  SamplerReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.dim = P.total_dim();
  for (int t = 0; t < trials; ++t) {
    const CriterionResult res = criterion_infinitesimal(P, P.embed_base(sample_xi(P, seed, t)));
    rep.max_rank = std::max(rep.max_rank, res.rank);
    if (res.holds) ++rep.successes;
  }
  return rep;
}

}  // namespace carnot
