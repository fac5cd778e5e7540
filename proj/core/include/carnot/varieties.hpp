#ifndef CARNOT_VARIETIES_HPP
#define CARNOT_VARIETIES_HPP

#include "carnot/group.hpp"

namespace carnot {

/// Skew form w(lambda)(X, Y) = lambda([X, Y]) restricted to the first
/// layer, as an r x r matrix.
struct SkewForm {
  AlgebraPtr alg;
  RatMat m;
};

/// Extremal polynomial P^lambda_i(g) = ((Ad_g)^* lambda)(e_i),
/// evaluated exactly through the coadjoint action (i is 0-based).
Rat eval_extremal_poly(const Covector& lambda, int i, const GroupElement& g);

/// All n values P^lambda_i(g) at once (one coadjoint evaluation).
RatVec extremal_poly_values(const Covector& lambda, const GroupElement& g);

/// Optional symbolic expansion of P^lambda_i in the exponential
/// coordinates of g; a dense multidegree map, only offered for small
/// algebras since the expansion blows up combinatorially.
std::map<std::vector<int>, Rat> expand_extremal_poly(const Covector& lambda, int i,
                                                     int max_dim = 20);

/// g in Z^lambda: the first r extremal polynomials vanish at g.
bool in_abnormal_variety(const Covector& lambda, const GroupElement& g);

SkewForm w_form(const Covector& lambda);

/// Exact nullspace of w_form(lambda), as vectors in V_1 coordinates.
std::vector<RatVec> w_kernel(const Covector& lambda);

/// g in W^lambda = {g : ((Ad_g)^* lambda)|_{V_{s-1}} = 0}.
bool W_lambda_contains(const Covector& lambda, const GroupElement& g);

/// Max |((Ad_g)^* lambda)(b)| over trajectory samples g and a basis b
/// of V_1 + [V_1, V_1]; zero iff lambda witnesses the Goh condition
/// along the sampled points.
Rat goh_residual(const Covector& lambda, const std::vector<GroupElement>& trajectory);

}  // namespace carnot

#endif
