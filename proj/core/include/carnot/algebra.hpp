#ifndef CARNOT_ALGEBRA_HPP
#define CARNOT_ALGEBRA_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carnot/errors.hpp"
#include "carnot/hall.hpp"
#include "carnot/linalg.hpp"
#include "carnot/rational.hpp"

namespace carnot {

class CarnotAlgebra;
using AlgebraPtr = std::shared_ptr<const CarnotAlgebra>;

/// Sparse structure tensor entry list for one basis pair.
using SparseVec = std::vector<std::pair<int, Rat>>;

/// A stratified nilpotent Lie algebra with a fixed graded basis and
/// exact rational structure constants. Immutable after construction.
class CarnotAlgebra {
 public:
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  int step() const { return step_; }
  const std::vector<int>& layer_dims() const { return layer_dims_; }

  /// 1-based layer of a 0-based basis index.
  int layer_of(int i) const { return layer_of_[i]; }
  /// First 0-based basis index of a 1-based layer.
  int layer_begin(int layer) const { return layer_begin_[layer - 1]; }
  int layer_end(int layer) const { return layer_begin_[layer - 1] + layer_dims_[layer - 1]; }

  const std::string& label(int i) const { return labels_[i]; }
  std::optional<int> index_of(const std::string& label) const;

  /// [e_i, e_j] expanded over the basis, valid for i < j only; the
  /// general case goes through bracket().
  const SparseVec& bracket_basis(int i, int j) const;

  /// Bilinear bracket of coefficient vectors.
  RatVec bracket(const RatVec& x, const RatVec& y) const;

  /// Matrix of ad_x; column k holds [x, e_k].
  RatMat ad(const RatVec& x) const;

  RatVec basis_vector(int i) const;
  RatVec zero() const { return RatVec(dim_, Rat(0)); }

  bool is_free() const { return !hall_.empty(); }
  const std::vector<HallWord>& hall() const { return hall_; }

  /// Checks antisymmetry (trivially true for the stored triangle),
  /// grading, the Jacobi identity on all basis triples, and the
  /// stratification condition [V_1, V_j] = V_{j+1}. Throws
  /// ValidationError naming the offending triple.
  void validate() const;

  /// Factories. Construction is single-threaded; the returned algebra
  /// is immutable and safe to share across threads.
  static AlgebraPtr free_nilpotent(int rank, int step, size_t dim_cap = kDefaultDimCap);
  static AlgebraPtr from_structure(int rank, int step, std::vector<int> layer_dims,
                                   std::vector<std::string> labels,
                                   std::map<std::pair<int, int>, SparseVec> upper_brackets,
                                   bool validate_now = true);
  static AlgebraPtr heisenberg();
  static AlgebraPtr heisenberg_pair();  // H x H with labels X1..X4, Z1, Z2
  static AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

  static constexpr size_t kDefaultDimCap = 200;

 private:
  CarnotAlgebra() = default;

  int rank_ = 0, step_ = 0, dim_ = 0;
  std::vector<int> layer_dims_;
  std::vector<int> layer_of_;
  std::vector<int> layer_begin_;
  std::vector<std::string> labels_;
  std::vector<HallWord> hall_;  // nonempty iff built as a free algebra
  // Upper triangle (i < j) of the structure tensor; full table looked
  // up through bracket_basis with the sign handled there.
  std::vector<SparseVec> upper_;
  SparseVec empty_;

  size_t upper_index(int i, int j) const { return static_cast<size_t>(i) * dim_ + j; }
  void finish_layout();
};

/// Element of the algebra: exact coefficients over the graded basis.
struct LieElement {
  AlgebraPtr alg;
  RatVec c;

  LieElement() = default;
  LieElement(AlgebraPtr a, RatVec coeffs);

  bool is_zero() const { return carnot::is_zero(c); }
  int dim() const { return alg->dim(); }
};

LieElement bracket(const LieElement& x, const LieElement& y);
RatMat ad_matrix(const LieElement& x);
LieElement operator+(const LieElement& x, const LieElement& y);
LieElement operator-(const LieElement& x, const LieElement& y);
LieElement operator*(const Rat& s, const LieElement& x);
bool operator==(const LieElement& x, const LieElement& y);

/// Strata-preserving derivation, stored as its full dim x dim matrix.
struct Derivation {
  AlgebraPtr alg;
  RatMat m;

  RatVec operator()(const RatVec& x) const { return m.apply(x); }
};

/// Extend a linear map on V_1 to a derivation of the whole algebra.
/// The extension exists uniquely for free algebras; for other algebras
/// it is attempted layer by layer and a DerivationExtensionError is
/// thrown when the Leibniz rule cannot be satisfied.
Derivation extend_derivation(const AlgebraPtr& alg, const RatMat& first_layer_map);

/// Extend an invertible map on V_1 of a free algebra to the graded
/// automorphism it induces.
RatMat extend_automorphism(const AlgebraPtr& alg, const RatMat& first_layer_map);

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace carnot

#endif
