#ifndef CARNOT_F33_HPP
#define CARNOT_F33_HPP

#include "carnot/endpoint.hpp"

namespace carnot {

/// Initial data of a regular abnormal extremal of the free rank-3
/// step-3 group: the control seed u0 (the top of the skew kernel) and
/// the traceless matrix driving du/dt = A u.
struct ExtremalDatum {
  Rat u0[3];
  RatMat A;  // 3 x 3, trace zero
};

/// Kernel direction (P23, P31, P12) of a nonzero 3 x 3 skew matrix.
RatVec control_kernel(const RatMat& P);

/// Control value at time t: closed form for diagonal A, RK4 otherwise.
Vecd extremal_controls(const ExtremalDatum& d, double t, double rk_step = 1e-3);

/// The dual-basis covector for the degree-3 layer that matches a
/// traceless matrix A under the Hamiltonian pairing; together with
/// the V_2 part from u0 this is the initial eta of the adjoint
/// equations. Validated operationally by the constraint residuals.
Covector extremal_covector(const AlgebraPtr& f33, const ExtremalDatum& d);

/// The covector of the worked example with exponential controls:
/// lambda = X21* - X31* + X32* - c X213* + b X312*, c = -a - b.
Covector printed_abc_covector(const AlgebraPtr& f33, const Rat& a, const Rat& b);

struct AbcReport {
  double extremal_poly_residual = 0.0;   // max |P^lambda_i(gamma(t))|, i <= 3
  double adjoint_residual = 0.0;         // Gole-Karidi constraint residual
  bool not_in_proper_subgroup = false;
  std::vector<double> times;
  std::vector<Vecd> trajectory;          // log coordinates, dim 14
};

/// Verifies the exponential-control abnormal curve u(t) =
/// (A1 e^{at}, A2 e^{bt}, A3 e^{ct}), c = -a - b: integrates the curve
/// by an N-segment piecewise-constant approximation (segment values are
/// the exact segment averages of u), evaluates the extremal polynomials
/// of the printed covector along it, and integrates the adjoint
/// equations. Residuals are reported, never asserted here.
AbcReport verify_abnormal_abc(const AlgebraPtr& f33, const Rat& a, const Rat& b,
                              const std::array<Rat, 3>& amplitudes, int segments = 2000,
                              double rk_step = 1e-3);

/// True iff the V_1 projections of the sampled log coordinates span
/// all of V_1 (numeric rank, tolerance on singular values). A curve
/// from the identity with full first-layer span cannot lie in any
/// proper Carnot subgroup.
bool not_in_subgroup_check(const std::vector<Vecd>& trajectory, int rank,
                           double sv_tol = 1e-9);

/// Exact-trajectory variant.
bool not_in_subgroup_check(const std::vector<GroupElement>& trajectory, double sv_tol = 1e-9);

}  // namespace carnot

#endif
