#ifndef CARNOT_GROUP_HPP
#define CARNOT_GROUP_HPP

#include "carnot/algebra.hpp"

namespace carnot {

/// Group element in exponential coordinates of the first kind: the
/// stored vector is log g over the graded basis. The identity is the
/// zero vector and inversion is negation.
struct GroupElement {
  AlgebraPtr alg;
  RatVec log;

  GroupElement() = default;
  GroupElement(AlgebraPtr a, RatVec coords);

  static GroupElement identity(const AlgebraPtr& a) { return GroupElement(a, RatVec(a->dim(), Rat(0))); }
  GroupElement inverse() const { return GroupElement(alg, scaled(log, Rat(-1))); }
  bool is_identity() const { return carnot::is_zero(log); }
};

bool operator==(const GroupElement& g, const GroupElement& h);

/// Covector over the dual basis.
struct Covector {
  AlgebraPtr alg;
  RatVec c;

  Covector() = default;
  Covector(AlgebraPtr a, RatVec coeffs);

  Rat operator()(const RatVec& x) const { return dot(c, x); }
  bool is_zero() const { return carnot::is_zero(c); }
};

/// log(exp g . exp h) through the Dynkin series truncated at the step
/// of the algebra; exact for nilpotent algebras.
GroupElement bch_product(const GroupElement& g, const GroupElement& h);

/// Ad_{exp X} = e^{ad_X}, a finite sum by nilpotency.
RatMat adjoint(const GroupElement& g);

/// (Ad_g)^* lambda, i.e. lambda composed with Ad_g.
Covector coadjoint(const GroupElement& g, const Covector& lambda);

/// Coefficients of t^0..t^step of log(exp x . exp(t y)); used for exact
/// differentials of left translation (and, mirrored, right translation).
std::vector<RatVec> bch_series_in_t(const AlgebraPtr& alg, const RatVec& x, const RatVec& y,
                                    bool t_on_left = false);

/// d(L_g)_e v in exponential coordinates (exact).
RatVec left_translation_differential(const GroupElement& g, const RatVec& v);

/// d(R_g)_e v in exponential coordinates (exact).
RatVec right_translation_differential(const GroupElement& g, const RatVec& v);

}  // namespace carnot

#endif
