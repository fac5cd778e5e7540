#ifndef CARNOT_STEP2_HPP
#define CARNOT_STEP2_HPP

#include "carnot/endpoint.hpp"

namespace carnot {

/// Bivector over e_i ^ e_j, i < j (0-based, lexicographic pair order).
/// The skew contraction matrix view and the coefficient view are kept
/// consistent by construction.
struct Bivector {
  int r = 0;
  RatVec comp;  // size r(r-1)/2

  Bivector() = default;
  explicit Bivector(int rank) : r(rank), comp(static_cast<size_t>(rank) * (rank - 1) / 2, Rat(0)) {}

  static size_t pair_index(int r, int i, int j);
  Rat& at(int i, int j) { return comp[pair_index(r, i, j)]; }
  const Rat& at(int i, int j) const { return comp[pair_index(r, i, j)]; }

  /// Skew matrix S with S_ij = coefficient of e_i ^ e_j.
  RatMat contraction() const;
  bool is_zero() const { return carnot::is_zero(comp); }
};

struct Step2Point {
  RatVec v;  // size r
  Bivector xi;

  int rank() const { return xi.r; }
};

/// Homogeneous multivector of fixed grade; keys are sorted index sets
/// encoded as bitmasks.
struct Multivector {
  int r = 0;
  int grade = 0;
  std::map<uint32_t, Rat> comp;

  bool is_zero() const;
};

Multivector wedge(const Multivector& a, const Multivector& b);
Multivector multivector_of(const Bivector& xi);
Multivector multivector_of_vector(int r, const RatVec& v);
Multivector multivector_one(int r);

/// Exact k-fold wedge power of a bivector; throws DegreeTooHighError
/// when 2k exceeds the rank.
Multivector wedge_power(const Bivector& xi, int k);

/// supp(xi): column space of the contraction matrix.
std::vector<RatVec> support(const Bivector& xi);

/// rank(v, xi) = dim(R v + supp(xi)).
int rank2(const Step2Point& p);

/// Membership in the abnormal set of the free step-2 group of rank r:
/// rank(v, xi) <= r - 2.
bool is_abnormal_point(const Step2Point& p);

/// The same membership through the wedge equations: for r = 2s,
/// xi^s = 0 and v ^ xi^{s-1} = 0; for r = 2s+1, xi^s = 0 alone.
bool pfaffian_membership(const Step2Point& p);

enum class Step2Stratum { Y, Y1, NotAbnormal };

/// Rank strata of the abnormal set for even r.
Step2Stratum stratum(const Step2Point& p);

const char* stratum_name(Step2Stratum s);

/// Basis of the subalgebra h^lambda = ker w(lambda) + [ker, ker] of a
/// step <= 2 algebra; lambda must have a nonzero V_2 part.
std::vector<RatVec> h_lambda(const Covector& lambda);

/// Minimal first-layer subspace W with p in W + Lambda^2 W; defined
/// for abnormal points, where dim W <= r - 2.
std::vector<RatVec> subgroup_descent(const Step2Point& p);

/// Numeric rank of the Jacobian of the defining wedge equations at a
/// sample in stratum Y (tolerance on singular values); the expected
/// value is 3 for every even rank.
int codim_certificate(const Step2Point& sample, double sv_tol = 1e-9);

/// Exact Darboux-style decomposition xi = sum c_i a_i ^ b_i with
/// 2 x (number of terms) = rank of xi.
struct DarbouxTerm {
  Rat c;
  RatVec a, b;
};
std::vector<DarbouxTerm> darboux_decompose(const Bivector& xi);

/// A piecewise-constant control in the free step-2 algebra reaching
/// exp(v, xi), built from commutator rectangles along the Darboux
/// planes of xi; all segment values lie in supp(v, xi).
PiecewiseControl reaching_control(const AlgebraPtr& free_step2, const Step2Point& p);

/// Coordinate bridges between V + Lambda^2 V and the Hall basis of the
/// free step-2 algebra.
GroupElement to_group_element(const AlgebraPtr& free_step2, const Step2Point& p);
Step2Point from_group_element(const GroupElement& g);

/// Fast exact scan over the coefficient grid {-1,0,1}^(r + r(r-1)/2)
/// comparing the rank test with the wedge equations; returns the number
/// of points scanned, throwing on any disagreement.
size_t equivalence_grid_scan(int r);

}  // namespace carnot

#endif
