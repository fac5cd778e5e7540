#ifndef CARNOT_NUMERIC_HPP
#define CARNOT_NUMERIC_HPP

#include <Eigen/Dense>

#include "carnot/group.hpp"

namespace carnot {

using Vecd = Eigen::VectorXd;
using Matd = Eigen::MatrixXd;

/// Double-precision view of an algebra's structure tensor. The exact
/// modules never touch this; it backs the trajectory integrators and
/// residual reports, which are numeric by design.
class NumericAlgebra {
 public:
  explicit NumericAlgebra(AlgebraPtr alg);

  const AlgebraPtr& exact() const { return alg_; }
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  int step() const { return step_; }

  Vecd bracket(const Vecd& x, const Vecd& y) const;
  Matd ad(const Vecd& x) const;
  /// e^{ad_x}, truncated by nilpotency.
  Matd Ad(const Vecd& x) const;
  /// log(exp x . exp y) via the same Dynkin table as the exact path.
  Vecd bch(const Vecd& x, const Vecd& y) const;

  /// c_ij^k as a dense triple list for the Gole-Karidi equations.
  struct Triple {
    int i, j, k;
    double c;
  };
  const std::vector<Triple>& triples() const { return triples_; }

  Vecd from_exact(const RatVec& v) const;

 private:
  AlgebraPtr alg_;
  int dim_, rank_, step_;
  // bracket terms for i < j
  struct Entry {
    int k;
    double c;
  };
  std::vector<std::vector<Entry>> upper_;
  std::vector<Triple> triples_;
  struct Word {
    std::vector<uint8_t> letters;
    double coeff;
  };
  std::vector<Word> dynkin_;
};

}  // namespace carnot

#endif
