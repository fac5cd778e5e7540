#ifndef CARNOT_ENDPOINT_HPP
#define CARNOT_ENDPOINT_HPP

#include <functional>

#include "carnot/numeric.hpp"
#include "carnot/varieties.hpp"

namespace carnot {

/// Piecewise-constant horizontal control on [0,1]: values in V_1 and
/// exact rational breakpoints. This class is dense enough for every
/// exact certificate in the library; the span of the differential's
/// image is computed exactly because Ad along each segment is
/// polynomial in t of degree < step.
class PiecewiseControl {
 public:
  PiecewiseControl(AlgebraPtr alg, std::vector<Rat> breakpoints, std::vector<RatVec> values);

  /// Constant control u on the whole interval.
  static PiecewiseControl constant(const AlgebraPtr& alg, RatVec u);
  /// Zero segments reduce to the constant-zero control.
  static PiecewiseControl zero(const AlgebraPtr& alg);
  /// Equal-length segments with the given V_1 values.
  static PiecewiseControl uniform(const AlgebraPtr& alg, std::vector<RatVec> values);

  const AlgebraPtr& algebra() const { return alg_; }
  size_t segments() const { return values_.size(); }
  const std::vector<Rat>& breakpoints() const { return breaks_; }
  /// Full-dimension coefficient vector of segment k's value.
  const RatVec& value(size_t k) const { return values_[k]; }
  Rat duration(size_t k) const { return breaks_[k + 1] - breaks_[k]; }

 private:
  AlgebraPtr alg_;
  std::vector<Rat> breaks_;
  std::vector<RatVec> values_;
};

/// Control given as a callable into V_1 (first r coordinates), sampled
/// numerically. Used where the underlying claims are analytic.
struct SmoothControl {
  AlgebraPtr alg;
  std::function<Vecd(double)> u;  // returns an r-vector
  int resolution = 2000;          // default segment count on [0,1]
};

/// Exact endpoint gamma_u(1) as the ordered product of segment
/// exponentials.
GroupElement endpoint(const PiecewiseControl& u);

/// Endpoint of the restriction of u to [a, b] (for concatenation
/// identities); segments are split at a and b as needed.
GroupElement endpoint_partial(const PiecewiseControl& u, const Rat& a, const Rat& b);

/// Exact trajectory at the breakpoints, gamma(t_0) .. gamma(t_k).
std::vector<GroupElement> breakpoint_trajectory(const PiecewiseControl& u);

/// Exact basis of the right-trivialized image of dEnd_u: the span of
/// Ad_{gamma(t)} V_1 over t, generated per segment by
/// Ad_{gamma(t_{k-1})} (ad_{u_k})^j e_i, j < step.
std::vector<RatVec> dEnd_image(const PiecewiseControl& u);

struct AbnormalityCertificate {
  bool abnormal = false;
  size_t image_rank = 0;
  std::vector<Covector> annihilators;  // exact basis of the image's annihilator
};

/// Rank test of the endpoint differential, with the full annihilator
/// basis. Every returned covector is re-verified to kill Ad_{gamma(t_k)} V_1
/// at all breakpoints.
AbnormalityCertificate is_abnormal(const PiecewiseControl& u);

/// Graded surjective Lie algebra homomorphism, columns indexed by the
/// source basis.
struct AlgebraHom {
  AlgebraPtr source;
  AlgebraPtr target;
  RatMat matrix;  // target_dim x source_dim

  RatVec operator()(const RatVec& x) const { return matrix.apply(x); }
  GroupElement map_group(const GroupElement& g) const;
};

/// Validates the homomorphism conditions (bracket compatibility,
/// layer-respecting, surjectivity); throws NotHomomorphismError.
AlgebraHom make_hom(AlgebraPtr source, AlgebraPtr target, RatMat matrix);

/// Quotient of a free algebra onto the free algebra of lower step.
AlgebraHom free_truncation_hom(const AlgebraPtr& source, const AlgebraPtr& target);

/// Projection of a direct sum onto its first or second summand.
AlgebraHom product_projection_hom(const AlgebraPtr& product, const AlgebraPtr& factor,
                                  int which);

/// Push a control through a homomorphism whose V_1 image lies in the
/// target polarization.
PiecewiseControl project_control(const AlgebraHom& pi, const PiecewiseControl& u);

/// Result of the left-invariant adjoint (Gole-Karidi) integration.
struct AdjointTrajectory {
  std::vector<double> times;
  std::vector<Vecd> eta;     // covector coordinates over the dual basis
  double constraint_residual = 0.0;  // max over t, i <= r of |sum c_ij^k u_j eta_k|
};

/// RK4 integration of d eta_i/dt + sum_{j,k} c_ij^k u_j eta_k = 0 with
/// the first-layer rows reported as the constraint residual.
AdjointTrajectory adjoint_integrate(const SmoothControl& u, const Covector& eta0, double step);

}  // namespace carnot

#endif
