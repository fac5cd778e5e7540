#ifndef CARNOT_PROLONG_HPP
#define CARNOT_PROLONG_HPP

#include <random>

#include "carnot/group.hpp"

namespace carnot {

/// Element of the prolonged algebra h + g: a first-layer endomorphism
/// together with a base-algebra vector.
struct ProlongedElement {
  RatMat h;   // r x r
  RatVec x;   // dim g
};

/// The degree-0 prolongation g~ = h + g with h the strata-preserving
/// derivations generated by gl(V_1). The combined bracket is
/// [D1, D2] = commutator, [D, x] = D(x), [x, y] = base bracket.
class Prolongation {
 public:
  explicit Prolongation(AlgebraPtr alg);

  const AlgebraPtr& base() const { return alg_; }
  int h_dim() const { return r_ * r_; }
  int total_dim() const { return r_ * r_ + alg_->dim(); }

  ProlongedElement zero() const;
  ProlongedElement embed_base(const RatVec& x) const;
  ProlongedElement embed_h(const RatMat& m) const;

  ProlongedElement bracket(const ProlongedElement& a, const ProlongedElement& b) const;

  RatVec flatten(const ProlongedElement& e) const;
  ProlongedElement unflatten(const RatVec& f) const;

  /// Extended derivation of an arbitrary r x r matrix (cached E_ab
  /// extensions combined linearly).
  RatVec apply_derivation(const RatMat& m, const RatVec& x) const;

  /// e^{ad_zeta} on the prolongation; throws
  /// NonNilpotentProlongationError when ad_zeta is not nilpotent.
  std::vector<ProlongedElement> adjoint_orbit(const ProlongedElement& zeta,
                                              const std::vector<ProlongedElement>& targets) const;

  /// Jacobi identity on all basis triples of h + g (exact).
  bool jacobi_holds() const;

 private:
  AlgebraPtr alg_;
  int r_;
  std::vector<RatMat> ext_;  // extended E_ab, row-major over (a, b)
};

struct CriterionResult {
  bool holds = false;
  size_t rank = 0;
  size_t dim = 0;
};

/// Infinitesimal Sard criterion: h + V_1 + ad_xi(h + V_1) spans the
/// whole prolongation.
CriterionResult criterion_infinitesimal(const Prolongation& P, const ProlongedElement& xi);

/// Group-level criterion at p = exp(zeta):
/// h + V_1 + Ad_{p^-1}(h + V_1) spans the prolongation.
CriterionResult criterion_group(const Prolongation& P, const ProlongedElement& zeta);

/// Left-trivialized value of the induced contact field of X at g:
/// pi_g(Ad_{g^-1} X).
LieElement contact_field_eval(const Prolongation& P, const ProlongedElement& X,
                              const GroupElement& g);

/// Exact rank test of Ad_{g^-1}V_1 + V_1 + pi_g(Ad_{g^-1} h) = g.
bool sard_set_membership(const Prolongation& P, const GroupElement& g);

struct SamplerReport {
  std::string algebra;
  int trials = 0;
  int successes = 0;
  uint64_t seed = 0;
  size_t dim = 0;      // prolongation dimension
  size_t max_rank = 0; // best rank seen across trials
};

/// Seeded genericity sampler: random rational xi with integer
/// coordinates in [-9, 9], one criterion_infinitesimal test per trial.
/// Per-trial generators are seeded by (seed, trial), so trials are
/// order-independent and distributable.
SamplerReport generic_sampler(const Prolongation& P, int trials, uint64_t seed);

/// The sampling box for one trial (exposed for reproducibility tests).
RatVec sample_xi(const Prolongation& P, uint64_t seed, int trial);

}  // namespace carnot

#endif
