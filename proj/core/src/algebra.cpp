#include "carnot/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace carnot {

namespace {

using SparseMap = std::map<int, Rat>;

SparseVec to_sparse_vec(const SparseMap& m) {
  SparseVec v;
  v.reserve(m.size());
  for (const auto& [k, q] : m)
    if (q != 0) v.emplace_back(k, q);
  return v;
}

/// Hall-basis bracket rewriting. Words are rewritten with antisymmetry
/// and the Jacobi identity until every term is an admissible pair; the
/// nilpotent grading bounds the recursion.
class HallBracketBuilder {
 public:
  HallBracketBuilder(const std::vector<HallWord>& words, int step)
      : words_(words), step_(step) {
    for (size_t k = 0; k < words.size(); ++k)
      if (words[k].left >= 0) pair_index_[{words[k].left, words[k].right}] = static_cast<int>(k);
  }

  const SparseMap& expand(int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    SparseMap out = compute(i, j);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  SparseMap compute(int i, int j) {
    SparseMap out;
    if (i == j) return out;
    if (i < j) {
      for (const auto& [k, q] : expand(j, i)) out[k] = -q;
      return out;
    }
    const HallWord& u = words_[i];
    const HallWord& v = words_[j];
    if (u.degree + v.degree > step_) return out;
    if (u.left < 0 || u.right <= j) {
      // admissible pair: a basis word
      out[pair_index_.at({i, j})] = 1;
      return out;
    }
    // [[a,b], v] = [[a,v], b] + [a, [b,v]]
    const int a = u.left, b = u.right;
    for (const auto& [k, q] : expand(a, j)) accumulate(out, expand(k, b), q);
    for (const auto& [k, q] : expand(b, j)) accumulate(out, expand(a, k), q);
    return out;
  }

  static void accumulate(SparseMap& dst, const SparseMap& src, const Rat& scale) {
    for (const auto& [k, q] : src) {
      Rat& slot = dst[k];
      slot += scale * q;
      if (slot == 0) dst.erase(k);
    }
  }

  const std::vector<HallWord>& words_;
  int step_;
  std::map<std::pair<int, int>, int> pair_index_;
  std::map<std::pair<int, int>, SparseMap> memo_;
};

}  // namespace

void CarnotAlgebra::finish_layout() {
  dim_ = std::accumulate(layer_dims_.begin(), layer_dims_.end(), 0);
  layer_of_.clear();
  layer_begin_.clear();
  int pos = 0;
  for (size_t l = 0; l < layer_dims_.size(); ++l) {
    layer_begin_.push_back(pos);
    for (int k = 0; k < layer_dims_[l]; ++k) layer_of_.push_back(static_cast<int>(l) + 1);
    pos += layer_dims_[l];
  }
}

std::optional<int> CarnotAlgebra::index_of(const std::string& label) const {
  for (int i = 0; i < dim_; ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

const SparseVec& CarnotAlgebra::bracket_basis(int i, int j) const {
  if (i < j) return upper_[upper_index(i, j)];
  return empty_;  // callers handle i >= j via bracket()
}

RatVec CarnotAlgebra::bracket(const RatVec& x, const RatVec& y) const {
  RatVec out(dim_, Rat(0));
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0 && y[i] == 0) continue;
    for (int j = i + 1; j < dim_; ++j) {
      const Rat w = x[i] * y[j] - x[j] * y[i];
      if (w == 0) continue;
      for (const auto& [k, q] : upper_[upper_index(i, j)]) out[k] += w * q;
    }
  }
  return out;
}

RatMat CarnotAlgebra::ad(const RatVec& x) const {
  RatMat m(dim_, dim_);
  RatVec e(dim_, Rat(0));
  for (int k = 0; k < dim_; ++k) {
    e[k] = 1;
    RatVec col = bracket(x, e);
    for (int i = 0; i < dim_; ++i) m(i, k) = std::move(col[i]);
    e[k] = 0;
  }
  return m;
}

RatVec CarnotAlgebra::basis_vector(int i) const {
  RatVec v(dim_, Rat(0));
  v[i] = 1;
  return v;
}

void CarnotAlgebra::validate() const {
  // grading
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (const auto& [k, q] : upper_[upper_index(i, j)]) {
        if (q == 0) continue;
        if (layer_of_[k] != layer_of_[i] + layer_of_[j])
          throw ValidationError(ValidationError::Kind::Grading, i + 1, j + 1, k + 1,
                                "grading violated: [" + labels_[i] + "," + labels_[j] +
                                    "] has a component on " + labels_[k]);
      }

  // Jacobi on all basis triples
  RatVec ei(dim_, Rat(0)), ej(dim_, Rat(0)), ek(dim_, Rat(0));
  for (int i = 0; i < dim_; ++i) {
    ei[i] = 1;
    for (int j = i + 1; j < dim_; ++j) {
      ej[j] = 1;
      const RatVec bij = bracket(ei, ej);
      for (int k = j + 1; k < dim_; ++k) {
        ek[k] = 1;
        RatVec sum = bracket(bij, ek);
        add_scaled(sum, Rat(1), bracket(bracket(ej, ek), ei));
        add_scaled(sum, Rat(1), bracket(bracket(ek, ei), ej));
        if (!carnot::is_zero(sum))
          throw ValidationError(ValidationError::Kind::Jacobi, i + 1, j + 1, k + 1,
                                "Jacobi identity fails on (" + labels_[i] + "," + labels_[j] +
                                    "," + labels_[k] + ")");
        ek[k] = 0;
      }
      ej[j] = 0;
    }
    ei[i] = 0;
  }

  // stratification: brackets of V_1 with V_j span V_{j+1}
  for (int l = 1; l < step_; ++l) {
    std::vector<RatVec> gens;
    RatVec a(dim_, Rat(0)), b(dim_, Rat(0));
    for (int i = layer_begin(1); i < layer_end(1); ++i) {
      a[i] = 1;
      for (int j = layer_begin(l); j < layer_end(l); ++j) {
        b[j] = 1;
        RatVec br = bracket(a, b);
        RatVec proj(layer_dims_[l], Rat(0));
        for (int k = 0; k < layer_dims_[l]; ++k) proj[k] = br[layer_begin(l + 1) + k];
        gens.push_back(std::move(proj));
        b[j] = 0;
      }
      a[i] = 0;
    }
    if (rank_of(RatMat::from_rows(gens)) != static_cast<size_t>(layer_dims_[l]))
      throw ValidationError(ValidationError::Kind::NotStratified, 1, l, l + 1,
                            "[V_1, V_" + std::to_string(l) + "] does not span V_" +
                                std::to_string(l + 1));
  }
}

AlgebraPtr CarnotAlgebra::free_nilpotent(int rank, int step, size_t dim_cap) {
  if (rank < 1 || step < 1) throw std::invalid_argument("free_nilpotent: rank, step >= 1");

  std::vector<int> dims;
  size_t total = 0;
  for (int d = 1; d <= step; ++d) {
    const long w = witt_dimension(rank, d);
    dims.push_back(static_cast<int>(w));
    total += static_cast<size_t>(w);
    if (total > dim_cap) throw ResourceLimitError(total, dim_cap);
  }
  // rank 1: all higher layers vanish, keep only the first
  while (!dims.empty() && dims.back() == 0) dims.pop_back();

  auto alg = std::shared_ptr<CarnotAlgebra>(new CarnotAlgebra());
  alg->rank_ = rank;
  alg->step_ = static_cast<int>(dims.size());
  alg->layer_dims_ = dims;
  alg->finish_layout();
  alg->hall_ = hall_words(rank, static_cast<int>(dims.size()));
  if (alg->hall_.size() != static_cast<size_t>(alg->dim_))
    throw Error("hall enumeration does not match the Witt dimension");
  for (const auto& w : alg->hall_) alg->labels_.push_back(w.label);

  HallBracketBuilder builder(alg->hall_, static_cast<int>(dims.size()));
  alg->upper_.assign(static_cast<size_t>(alg->dim_) * alg->dim_, {});
  for (int i = 0; i < alg->dim_; ++i)
    for (int j = i + 1; j < alg->dim_; ++j) {
      SparseMap m = builder.expand(j, i);  // [e_j, e_i], j > i
      for (auto& [k, q] : m) q = -q;       // store [e_i, e_j]
      alg->upper_[alg->upper_index(i, j)] = to_sparse_vec(m);
    }
  return alg;
}

AlgebraPtr CarnotAlgebra::from_structure(int rank, int step, std::vector<int> layer_dims,
                                         std::vector<std::string> labels,
                                         std::map<std::pair<int, int>, SparseVec> upper_brackets,
                                         bool validate_now) {
  auto alg = std::shared_ptr<CarnotAlgebra>(new CarnotAlgebra());
  alg->rank_ = rank;
  alg->step_ = step;
  alg->layer_dims_ = std::move(layer_dims);
  alg->finish_layout();
  if (static_cast<int>(alg->layer_dims_.size()) != step || alg->layer_dims_[0] != rank)
    throw std::invalid_argument("from_structure: layer dims inconsistent with rank/step");
  if (labels.empty())
    for (int i = 0; i < alg->dim_; ++i) labels.push_back("e" + std::to_string(i + 1));
  if (static_cast<int>(labels.size()) != alg->dim_)
    throw std::invalid_argument("from_structure: wrong number of labels");
  alg->labels_ = std::move(labels);
  alg->upper_.assign(static_cast<size_t>(alg->dim_) * alg->dim_, {});
  for (auto& [ij, terms] : upper_brackets) {
    if (ij.first >= ij.second) throw std::invalid_argument("from_structure: need i < j");
    alg->upper_[alg->upper_index(ij.first, ij.second)] = std::move(terms);
  }
  if (validate_now) alg->validate();
  return alg;
}

AlgebraPtr CarnotAlgebra::heisenberg() {
  std::map<std::pair<int, int>, SparseVec> br;
  br[{0, 1}] = {{2, Rat(1)}};
  return from_structure(2, 2, {2, 1}, {"X1", "X2", "Z"}, std::move(br));
}

AlgebraPtr CarnotAlgebra::heisenberg_pair() {
  std::map<std::pair<int, int>, SparseVec> br;
  br[{0, 1}] = {{4, Rat(1)}};
  br[{2, 3}] = {{5, Rat(1)}};
  return from_structure(4, 2, {4, 2}, {"X1", "X2", "X3", "X4", "Z1", "Z2"}, std::move(br));
}

AlgebraPtr CarnotAlgebra::direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  const int step = std::max(a->step(), b->step());
  std::vector<int> dims(step, 0);
  for (int l = 1; l <= a->step(); ++l) dims[l - 1] += a->layer_dims()[l - 1];
  for (int l = 1; l <= b->step(); ++l) dims[l - 1] += b->layer_dims()[l - 1];

  // index maps: per layer, a's basis first, then b's
  std::vector<int> map_a(a->dim()), map_b(b->dim());
  {
    int pos = 0;
    std::vector<int> starts(step + 1, 0);
    for (int l = 1; l <= step; ++l) {
      starts[l] = pos;
      pos += dims[l - 1];
    }
    std::vector<int> offset(step + 1, 0);
    for (int i = 0; i < a->dim(); ++i) {
      const int l = a->layer_of(i);
      map_a[i] = starts[l] + offset[l]++;
    }
    for (int i = 0; i < b->dim(); ++i) {
      const int l = b->layer_of(i);
      map_b[i] = starts[l] + offset[l]++;
    }
  }

  std::vector<std::string> labels(std::accumulate(dims.begin(), dims.end(), 0));
  for (int i = 0; i < a->dim(); ++i) labels[map_a[i]] = a->label(i) + "a";
  for (int i = 0; i < b->dim(); ++i) labels[map_b[i]] = b->label(i) + "b";

  std::map<std::pair<int, int>, SparseVec> br;
  auto copy_brackets = [&](const AlgebraPtr& src, const std::vector<int>& map) {
    for (int i = 0; i < src->dim(); ++i)
      for (int j = i + 1; j < src->dim(); ++j) {
        const SparseVec& terms = src->bracket_basis(i, j);
        if (terms.empty()) continue;
        SparseVec mapped;
        for (const auto& [k, q] : terms) mapped.emplace_back(map[k], q);
        int mi = map[i], mj = map[j];
        if (mi > mj) {
          std::swap(mi, mj);
          for (auto& [k, q] : mapped) q = -q;
        }
        std::sort(mapped.begin(), mapped.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        br[{mi, mj}] = std::move(mapped);
      }
  };
  copy_brackets(a, map_a);
  copy_brackets(b, map_b);

  return from_structure(a->rank() + b->rank(), step, std::move(dims), std::move(labels),
                        std::move(br));
}

LieElement::LieElement(AlgebraPtr a, RatVec coeffs) : alg(std::move(a)), c(std::move(coeffs)) {
  if (static_cast<int>(c.size()) != alg->dim())
    throw std::invalid_argument("LieElement: coefficient vector length != dim");
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a != b) throw AlgebraMismatch();
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  require_same_algebra(x.alg, y.alg);
  return LieElement(x.alg, x.alg->bracket(x.c, y.c));
}

RatMat ad_matrix(const LieElement& x) { return x.alg->ad(x.c); }

LieElement operator+(const LieElement& x, const LieElement& y) {
  require_same_algebra(x.alg, y.alg);
  RatVec c = x.c;
  add_scaled(c, Rat(1), y.c);
  return LieElement(x.alg, std::move(c));
}

LieElement operator-(const LieElement& x, const LieElement& y) {
  require_same_algebra(x.alg, y.alg);
  return LieElement(x.alg, vec_sub(x.c, y.c));
}

LieElement operator*(const Rat& s, const LieElement& x) {
  return LieElement(x.alg, scaled(x.c, s));
}

bool operator==(const LieElement& x, const LieElement& y) {
  return x.alg == y.alg && x.c == y.c;
}

Derivation extend_derivation(const AlgebraPtr& alg, const RatMat& first_layer_map) {
  const int r = alg->rank();
  if (first_layer_map.rows() != static_cast<size_t>(r) ||
      first_layer_map.cols() != static_cast<size_t>(r))
    throw std::invalid_argument("extend_derivation: expected an r x r matrix");

  const int n = alg->dim();
  RatMat D(n, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) D(i, j) = first_layer_map(i, j);

  // Build layer l+1 images from layer 1 and layer l via the Leibniz
  // rule; each basis vector of the next layer is first expressed in
  // bracket generators.
  for (int l = 1; l < alg->step(); ++l) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<RatVec> cols;
    for (int i = alg->layer_begin(1); i < alg->layer_end(1); ++i)
      for (int j = alg->layer_begin(l); j < alg->layer_end(l); ++j) {
        pairs.emplace_back(i, j);
        RatVec br = alg->bracket(alg->basis_vector(i), alg->basis_vector(j));
        RatVec proj(alg->layer_dims()[l], Rat(0));
        for (int k = 0; k < alg->layer_dims()[l]; ++k)
          proj[k] = std::move(br[alg->layer_begin(l + 1) + k]);
        cols.push_back(std::move(proj));
      }
    const RatMat gen = RatMat::from_rows(cols).transpose();
    for (int k = 0; k < alg->layer_dims()[l]; ++k) {
      RatVec target(alg->layer_dims()[l], Rat(0));
      target[k] = 1;
      auto x = solve(gen, target);
      if (!x) throw DerivationExtensionError("layer " + std::to_string(l + 1) +
                                             " is not spanned by brackets");
      RatVec image(n, Rat(0));
      for (size_t p = 0; p < pairs.size(); ++p) {
        if ((*x)[p] == 0) continue;
        const auto [i, j] = pairs[p];
        RatVec term = alg->bracket(D.col(i), alg->basis_vector(j));
        add_scaled(term, Rat(1), alg->bracket(alg->basis_vector(i), D.col(j)));
        add_scaled(image, (*x)[p], term);
      }
      const int col = alg->layer_begin(l + 1) + k;
      for (int row = 0; row < n; ++row) D(row, col) = std::move(image[row]);
    }
  }

  // Leibniz must now hold on every basis pair; for free algebras it
  // does by construction, otherwise this is the consistency gate.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      RatVec lhs = D.apply(alg->bracket(alg->basis_vector(i), alg->basis_vector(j)));
      RatVec rhs = alg->bracket(D.col(i), alg->basis_vector(j));
      add_scaled(rhs, Rat(1), alg->bracket(alg->basis_vector(i), D.col(j)));
      if (lhs != rhs)
        throw DerivationExtensionError("Leibniz rule fails on (" + alg->label(i) + "," +
                                       alg->label(j) + "); no derivation extends this map");
    }

  return Derivation{alg, std::move(D)};
}

RatMat extend_automorphism(const AlgebraPtr& alg, const RatMat& first_layer_map) {
  if (!alg->is_free())
    throw std::invalid_argument("extend_automorphism requires a free algebra");
  const int r = alg->rank();
  if (first_layer_map.rows() != static_cast<size_t>(r) ||
      first_layer_map.cols() != static_cast<size_t>(r))
    throw std::invalid_argument("extend_automorphism: expected an r x r matrix");

  const int n = alg->dim();
  RatMat T(n, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) T(i, j) = first_layer_map(i, j);
  const auto& words = alg->hall();
  for (int k = r; k < n; ++k) {
    RatVec img = alg->bracket(T.col(words[k].left), T.col(words[k].right));
    for (int row = 0; row < n; ++row) T(row, k) = std::move(img[row]);
  }
  return T;
}

}  // namespace carnot
