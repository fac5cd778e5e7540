#include "carnot/endpoint.hpp"

#include <algorithm>

namespace carnot {

PiecewiseControl::PiecewiseControl(AlgebraPtr alg, std::vector<Rat> breakpoints,
                                   std::vector<RatVec> values)
    : alg_(std::move(alg)), breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.size() != values_.size() + 1 || values_.empty())
    throw std::invalid_argument("control needs k segments and k+1 breakpoints");
  if (breaks_.front() != 0 || breaks_.back() != 1)
    throw std::invalid_argument("control must cover [0,1]");
  for (size_t k = 0; k + 1 < breaks_.size(); ++k)
    if (!(breaks_[k] < breaks_[k + 1]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  const int r = alg_->rank();
  for (auto& v : values_) {
    if (static_cast<int>(v.size()) == r) v.resize(alg_->dim(), Rat(0));
    if (static_cast<int>(v.size()) != alg_->dim())
      throw std::invalid_argument("segment value has wrong length");
    for (int i = r; i < alg_->dim(); ++i)
      if (v[i] != 0) throw std::invalid_argument("segment value must lie in V_1");
  }
}

PiecewiseControl PiecewiseControl::constant(const AlgebraPtr& alg, RatVec u) {
  return PiecewiseControl(alg, {Rat(0), Rat(1)}, {std::move(u)});
}

PiecewiseControl PiecewiseControl::zero(const AlgebraPtr& alg) {
  return constant(alg, RatVec(alg->dim(), Rat(0)));
}

PiecewiseControl PiecewiseControl::uniform(const AlgebraPtr& alg, std::vector<RatVec> values) {
  const int k = static_cast<int>(values.size());
  std::vector<Rat> breaks;
  for (int i = 0; i <= k; ++i) breaks.push_back(Rat(i, k));
  for (auto& b : breaks) b.canonicalize();
  return PiecewiseControl(alg, std::move(breaks), std::move(values));
}

GroupElement endpoint(const PiecewiseControl& u) {
  GroupElement g = GroupElement::identity(u.algebra());
  for (size_t k = 0; k < u.segments(); ++k)
    g = bch_product(g, GroupElement(u.algebra(), scaled(u.value(k), u.duration(k))));
  return g;
}

GroupElement endpoint_partial(const PiecewiseControl& u, const Rat& a, const Rat& b) {
  GroupElement g = GroupElement::identity(u.algebra());
  const auto& t = u.breakpoints();
  for (size_t k = 0; k < u.segments(); ++k) {
    const Rat lo = std::max(t[k], a);
    const Rat hi = std::min(t[k + 1], b);
    if (!(lo < hi)) continue;
    g = bch_product(g, GroupElement(u.algebra(), scaled(u.value(k), hi - lo)));
  }
  return g;
}

std::vector<GroupElement> breakpoint_trajectory(const PiecewiseControl& u) {
  std::vector<GroupElement> traj;
  GroupElement g = GroupElement::identity(u.algebra());
  traj.push_back(g);
  for (size_t k = 0; k < u.segments(); ++k) {
    g = bch_product(g, GroupElement(u.algebra(), scaled(u.value(k), u.duration(k))));
    traj.push_back(g);
  }
  return traj;
}

std::vector<RatVec> dEnd_image(const PiecewiseControl& u) {
  const auto& alg = *u.algebra();
  const int r = alg.rank();
  std::vector<RatVec> gens;

  GroupElement g = GroupElement::identity(u.algebra());
  for (size_t k = 0; k < u.segments(); ++k) {
    const RatMat Adg = adjoint(g);
    // Ad along the segment is Ad_g e^{s ad_{u_k}}, polynomial of degree
    // < step in s, so these generators span the segment's contribution.
    std::vector<RatVec> seg;
    for (int i = 0; i < r; ++i) seg.push_back(alg.basis_vector(i));
    for (int j = 1; j < alg.step(); ++j) {
      std::vector<RatVec> next;
      for (int i = 0; i < r; ++i) {
        next.push_back(alg.bracket(u.value(k), seg[(j - 1) * r + i]));
      }
      for (auto& v : next) seg.push_back(std::move(v));
    }
    for (const auto& v : seg) {
      if (carnot::is_zero(v)) continue;
      gens.push_back(Adg.apply(v));
    }
    g = bch_product(g, GroupElement(u.algebra(), scaled(u.value(k), u.duration(k))));
  }
  return span_basis(gens);
}

AbnormalityCertificate is_abnormal(const PiecewiseControl& u) {
  const auto& alg = *u.algebra();
  const std::vector<RatVec> image = dEnd_image(u);

  AbnormalityCertificate cert;
  cert.image_rank = image.size();
  cert.abnormal = cert.image_rank < static_cast<size_t>(alg.dim());

  if (cert.abnormal) {
    // the annihilator of the image: nullspace of the generator matrix
    for (auto& lam : nullspace(RatMat::from_rows(image)))
      cert.annihilators.emplace_back(u.algebra(), std::move(lam));

    // re-verify: each annihilator kills Ad_{gamma(t_k)} V_1 at every
    // breakpoint (and, by construction, every image generator)
    const auto traj = breakpoint_trajectory(u);
    for (const auto& lam : cert.annihilators) {
      for (const auto& gen : image)
        if (dot(lam.c, gen) != 0) throw Error("certificate annihilator fails on a generator");
      for (const auto& g : traj) {
        const Covector pulled = coadjoint(g, lam);
        for (int i = 0; i < alg.rank(); ++i)
          if (pulled.c[i] != 0) throw Error("certificate annihilator fails at a breakpoint");
      }
    }
  }
  return cert;
}

GroupElement AlgebraHom::map_group(const GroupElement& g) const {
  require_same_algebra(g.alg, source);
  return GroupElement(target, matrix.apply(g.log));
}

AlgebraHom make_hom(AlgebraPtr source, AlgebraPtr target, RatMat matrix) {
  if (matrix.rows() != static_cast<size_t>(target->dim()) ||
      matrix.cols() != static_cast<size_t>(source->dim()))
    throw std::invalid_argument("make_hom: matrix shape mismatch");

  // layer-respecting
  for (int j = 0; j < source->dim(); ++j)
    for (int i = 0; i < target->dim(); ++i)
      if (matrix(i, j) != 0 && target->layer_of(i) != source->layer_of(j))
        throw NotHomomorphismError("map does not respect layers at " + source->label(j));

  // bracket compatibility on all basis pairs
  for (int i = 0; i < source->dim(); ++i)
    for (int j = i + 1; j < source->dim(); ++j) {
      RatVec lhs = matrix.apply(source->bracket(source->basis_vector(i), source->basis_vector(j)));
      RatVec rhs = target->bracket(matrix.col(i), matrix.col(j));
      if (lhs != rhs)
        throw NotHomomorphismError("bracket compatibility fails on (" + source->label(i) + "," +
                                   source->label(j) + ")");
    }

  if (rank_of(matrix) != static_cast<size_t>(target->dim()))
    throw NotHomomorphismError("map is not surjective");

  return AlgebraHom{std::move(source), std::move(target), std::move(matrix)};
}

AlgebraHom free_truncation_hom(const AlgebraPtr& source, const AlgebraPtr& target) {
  if (!source->is_free() || !target->is_free() || source->rank() != target->rank() ||
      source->step() < target->step())
    throw std::invalid_argument("free_truncation_hom: expects free algebras of equal rank");
  RatMat m(target->dim(), source->dim());
  for (int j = 0; j < target->dim(); ++j) m(j, j) = 1;  // shared Hall words lead the basis
  return make_hom(source, target, std::move(m));
}

AlgebraHom product_projection_hom(const AlgebraPtr& product, const AlgebraPtr& factor,
                                  int which) {
  RatMat m(factor->dim(), product->dim());
  for (int i = 0; i < factor->dim(); ++i) {
    const std::string wanted = factor->label(i) + (which == 0 ? "a" : "b");
    auto idx = product->index_of(wanted);
    if (!idx) throw std::invalid_argument("product_projection_hom: label " + wanted + " missing");
    m(i, *idx) = 1;
  }
  return make_hom(product, factor, std::move(m));
}

PiecewiseControl project_control(const AlgebraHom& pi, const PiecewiseControl& u) {
  require_same_algebra(u.algebra(), pi.source);
  // precondition: pi maps the source polarization into the target's
  for (int j = 0; j < pi.source->rank(); ++j)
    for (int i = pi.target->rank(); i < pi.target->dim(); ++i)
      if (pi.matrix(i, j) != 0)
        throw NotHomomorphismError("pi does not map V_1 into the target polarization");
  std::vector<RatVec> values;
  for (size_t k = 0; k < u.segments(); ++k) values.push_back(pi.matrix.apply(u.value(k)));
  return PiecewiseControl(pi.target, u.breakpoints(), std::move(values));
}

AdjointTrajectory adjoint_integrate(const SmoothControl& u, const Covector& eta0, double step) {
  if (step <= 0) throw std::invalid_argument("adjoint_integrate: step must be positive");
  const NumericAlgebra num(eta0.alg);
  const int n = num.dim();
  const int r = num.rank();
  for (int i = 0; i < r; ++i)
    if (eta0.c[i] != 0) throw std::invalid_argument("eta0 must vanish on V_1");

  // d eta_i/dt = -sum_{j<=r, k} c_ij^k u_j eta_k  (all i; the rows
  // i <= r are the constraint and are reported, not enforced)
  auto rhs = [&](double t, const Vecd& eta) {
    const Vecd uc = u.u(t);
    Vecd d = Vecd::Zero(n);
    for (const auto& tr : num.triples()) {
      if (tr.j >= r) continue;
      d[tr.i] -= tr.c * uc[tr.j] * eta[tr.k];
    }
    return d;
  };

  AdjointTrajectory out;
  Vecd eta = num.from_exact(eta0.c);
  double t = 0.0;
  out.times.push_back(t);
  out.eta.push_back(eta);

  auto constraint = [&](double tt, const Vecd& e) {
    const Vecd uc = u.u(tt);
    double worst = 0.0;
    for (const auto& tr : num.triples()) {
      if (tr.i >= r || tr.j >= r) continue;
      // accumulate per row below
      (void)tr;
    }
    Vecd rows = Vecd::Zero(r);
    for (const auto& tr : num.triples())
      if (tr.i < r && tr.j < r) rows[tr.i] += tr.c * uc[tr.j] * e[tr.k];
    for (int i = 0; i < r; ++i) worst = std::max(worst, std::abs(rows[i]));
    return worst;
  };

  out.constraint_residual = constraint(0.0, eta);
  while (t < 1.0 - 1e-12) {
    const double h = std::min(step, 1.0 - t);
    const Vecd k1 = rhs(t, eta);
    const Vecd k2 = rhs(t + h / 2, eta + (h / 2) * k1);
    const Vecd k3 = rhs(t + h / 2, eta + (h / 2) * k2);
    const Vecd k4 = rhs(t + h, eta + h * k3);
    eta += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
    out.times.push_back(t);
    out.eta.push_back(eta);
    out.constraint_residual = std::max(out.constraint_residual, constraint(t, eta));
  }
  return out;
}

}  // namespace carnot
