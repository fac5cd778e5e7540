#include "carnot/f33.hpp"

namespace carnot {

namespace {

int label_index(const CarnotAlgebra& alg, const std::string& label) {
  auto idx = alg.index_of(label);
  if (!idx) throw std::invalid_argument("basis label " + label + " not found");
  return *idx;
}

void require_f33(const AlgebraPtr& alg) {
  if (alg->rank() != 3 || alg->step() != 3 || !alg->is_free())
    throw std::invalid_argument("expected the free rank-3 step-3 algebra");
}

bool is_diagonal(const RatMat& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

}  // namespace

RatVec control_kernel(const RatMat& P) {
  if (P.rows() != 3 || P.cols() != 3) throw std::invalid_argument("control_kernel: 3 x 3 matrix");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (P(i, j) != -P(j, i)) throw std::invalid_argument("control_kernel: matrix must be skew");
  if (P.is_zero()) throw ZeroMatrixError();
  return RatVec{P(1, 2), P(2, 0), P(0, 1)};
}

Vecd extremal_controls(const ExtremalDatum& d, double t, double rk_step) {
  if (d.A(0, 0) + d.A(1, 1) + d.A(2, 2) != 0)
    throw std::invalid_argument("extremal datum needs trace(A) = 0");
  Vecd u(3);
  if (is_diagonal(d.A)) {
    for (int i = 0; i < 3; ++i) u[i] = to_double(d.u0[i]) * std::exp(to_double(d.A(i, i)) * t);
    return u;
  }
  // du/dt = A u by RK4 from 0 to t
  Matd A(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = to_double(d.A(i, j));
  for (int i = 0; i < 3; ++i) u[i] = to_double(d.u0[i]);
  const double dir = t >= 0 ? 1.0 : -1.0;
  double s = 0.0;
  while (dir * (t - s) > 1e-15) {
    const double h = dir * std::min(rk_step, dir * (t - s));
    const Vecd k1 = A * u;
    const Vecd k2 = A * (u + (h / 2) * k1);
    const Vecd k3 = A * (u + (h / 2) * k2);
    const Vecd k4 = A * (u + h * k3);
    u += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    s += h;
  }
  return u;
}

Covector extremal_covector(const AlgebraPtr& f33, const ExtremalDatum& d) {
  require_f33(f33);
  if (d.A(0, 0) + d.A(1, 1) + d.A(2, 2) != 0)
    throw std::invalid_argument("extremal datum needs trace(A) = 0");
  RatVec c(f33->dim(), Rat(0));
  // second layer: u0 = (P23, P31, P12)
  c[label_index(*f33, "X21")] = -d.u0[2];
  c[label_index(*f33, "X31")] = d.u0[1];
  c[label_index(*f33, "X32")] = -d.u0[0];
  // third layer: the Hamiltonian pairing ties the P_ijk to A by
  //   row 1 of A = (P312 - P213, P322, P323)
  //   row 2 of A = -(P311, P312, P313)
  //   row 3 of A = (P211, P212, P213)
  c[label_index(*f33, "X211")] = d.A(2, 0);
  c[label_index(*f33, "X212")] = d.A(2, 1);
  c[label_index(*f33, "X213")] = d.A(2, 2);
  c[label_index(*f33, "X311")] = -d.A(1, 0);
  c[label_index(*f33, "X312")] = -d.A(1, 1);
  c[label_index(*f33, "X313")] = -d.A(1, 2);
  c[label_index(*f33, "X322")] = d.A(0, 1);
  c[label_index(*f33, "X323")] = d.A(0, 2);
  return Covector(f33, std::move(c));
}

Covector printed_abc_covector(const AlgebraPtr& f33, const Rat& a, const Rat& b) {
  require_f33(f33);
  const Rat c_val = -a - b;
  RatVec c(f33->dim(), Rat(0));
  c[label_index(*f33, "X21")] = 1;
  c[label_index(*f33, "X31")] = -1;
  c[label_index(*f33, "X32")] = 1;
  c[label_index(*f33, "X213")] = -c_val;
  c[label_index(*f33, "X312")] = b;
  return Covector(f33, std::move(c));
}

AbcReport verify_abnormal_abc(const AlgebraPtr& f33, const Rat& a, const Rat& b,
                              const std::array<Rat, 3>& amplitudes, int segments,
                              double rk_step) {
  require_f33(f33);
  if (segments < 1) throw std::invalid_argument("segments >= 1");
  const NumericAlgebra num(f33);

  const double ea = to_double(a), eb = to_double(b), ec = -ea - eb;
  const double amp[3] = {to_double(amplitudes[0]), to_double(amplitudes[1]),
                         to_double(amplitudes[2])};
  const double rates[3] = {ea, eb, ec};

  auto control = [&](double t) {
    Vecd u(3);
    for (int i = 0; i < 3; ++i) u[i] = amp[i] * std::exp(rates[i] * t);
    return u;
  };
  // exact segment average of each exponential component
  auto segment_average = [&](double t0, double t1) {
    Vecd u(3);
    for (int i = 0; i < 3; ++i) {
      const double lam = rates[i];
      if (std::abs(lam) < 1e-14) {
        u[i] = amp[i];
      } else {
        u[i] = amp[i] * (std::exp(lam * t1) - std::exp(lam * t0)) / (lam * (t1 - t0));
      }
    }
    return u;
  };

  AbcReport rep;
  const Covector lambda = printed_abc_covector(f33, a, b);
  const Vecd lam = num.from_exact(lambda.c);

  Vecd g = Vecd::Zero(num.dim());
  rep.times.push_back(0.0);
  rep.trajectory.push_back(g);
  const double h = 1.0 / segments;
  for (int k = 0; k < segments; ++k) {
    const double t0 = k * h, t1 = (k + 1) * h;
    Vecd seg = segment_average(t0, t1);
    Vecd full = Vecd::Zero(num.dim());
    full.head(3) = h * seg;
    g = num.bch(g, full);
    rep.times.push_back(t1);
    rep.trajectory.push_back(g);
  }

  double worst = 0.0;
  for (const auto& point : rep.trajectory) {
    const Matd Ad = num.Ad(point);
    const Vecd pulled = Ad.transpose() * lam;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(pulled[i]));
  }
  rep.extremal_poly_residual = worst;

  SmoothControl sc{f33, control, segments};
  rep.adjoint_residual = adjoint_integrate(sc, lambda, rk_step).constraint_residual;
  rep.not_in_proper_subgroup = not_in_subgroup_check(rep.trajectory, 3);
  return rep;
}

bool not_in_subgroup_check(const std::vector<Vecd>& trajectory, int rank, double sv_tol) {
  if (trajectory.empty()) throw EmptyTrajectoryError();
  if (trajectory.front().head(rank).norm() > 1e-9)
    throw std::invalid_argument("trajectory must start at the identity");
  Matd m(trajectory.size(), rank);
  for (size_t i = 0; i < trajectory.size(); ++i)
    for (int j = 0; j < rank; ++j) m(i, j) = trajectory[i][j];
  Eigen::JacobiSVD<Matd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() < rank) return false;
  return sv[rank - 1] > sv_tol * std::max(1.0, sv[0]);
}

bool not_in_subgroup_check(const std::vector<GroupElement>& trajectory, double sv_tol) {
  if (trajectory.empty()) throw EmptyTrajectoryError();
  if (!trajectory.front().is_identity())
    throw std::invalid_argument("trajectory must start at the identity");
  const int r = trajectory.front().alg->rank();
  std::vector<Vecd> pts;
  for (const auto& g : trajectory) {
    Vecd v(g.alg->dim());
    for (int i = 0; i < g.alg->dim(); ++i) v[i] = to_double(g.log[i]);
    pts.push_back(std::move(v));
  }
  return not_in_subgroup_check(pts, r, sv_tol);
}

}  // namespace carnot
