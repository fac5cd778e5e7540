#include <doctest.h>

#include <sstream>

#include "carnot/io.hpp"
#include "test_support.hpp"

using namespace carnot;

namespace {

RatVec basis_combo(const AlgebraPtr& alg, std::initializer_list<std::pair<const char*, int>> terms) {
  RatVec v(alg->dim(), Rat(0));
  for (const auto& [label, coeff] : terms) {
    auto idx = alg->index_of(label);
    REQUIRE(idx.has_value());
    v[*idx] += coeff;
  }
  return v;
}

}  // namespace

TEST_CASE("free nilpotent dimensions match the Witt counts") {
  CHECK(witt_dimension(2, 1) == 2);
  CHECK(witt_dimension(2, 2) == 1);
  CHECK(witt_dimension(2, 3) == 2);
  CHECK(witt_dimension(2, 4) == 3);
  CHECK(witt_dimension(2, 5) == 6);
  CHECK(witt_dimension(3, 3) == 8);
  CHECK(witt_dimension(4, 3) == 20);

  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  CHECK(f24->dim() == 8);
  CHECK(f24->layer_dims() == std::vector<int>{2, 1, 2, 3});

  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  CHECK(f33->dim() == 14);
  CHECK(f33->layer_dims() == std::vector<int>{3, 3, 8});

  const auto f11 = CarnotAlgebra::free_nilpotent(1, 1);
  CHECK(f11->dim() == 1);

  const auto f43 = CarnotAlgebra::free_nilpotent(4, 3);
  CHECK(f43->dim() == 30);

  const auto f25 = CarnotAlgebra::free_nilpotent(2, 5);
  CHECK(f25->dim() == 14);

  // enumeration agrees with the closed formula on a small grid
  for (int r = 2; r <= 4; ++r)
    for (int s = 1; s <= (r == 2 ? 6 : 4); ++s) {
      const auto alg = CarnotAlgebra::free_nilpotent(r, s);
      for (int d = 1; d <= s; ++d)
        CHECK(alg->layer_dims()[d - 1] == witt_dimension(r, d));
    }
}

TEST_CASE("rank-1 free algebra is abelian") {
  const auto f11 = CarnotAlgebra::free_nilpotent(1, 1);
  CHECK(f11->step() == 1);
  CHECK(is_zero(f11->bracket(f11->basis_vector(0), f11->basis_vector(0))));
}

TEST_CASE("the f_{2,4} basis reproduces the printed labels in order") {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  const std::vector<std::string> expected = {"X1",    "X2",    "X21",   "X211",
                                             "X212",  "X2111", "X2112", "X2122"};
  for (int i = 0; i < f24->dim(); ++i) CHECK(f24->label(i) == expected[i]);
}

TEST_CASE("the f_{3,3} basis reproduces the printed labels in order") {
  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  const std::vector<std::string> expected = {"X1",   "X2",   "X3",   "X21",  "X31",
                                             "X32",  "X211", "X212", "X213", "X311",
                                             "X312", "X313", "X322", "X323"};
  for (int i = 0; i < f33->dim(); ++i) CHECK(f33->label(i) == expected[i]);
}

TEST_CASE("golden brackets") {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  const auto x = [&](const char* l) { return basis_combo(f24, {{l, 1}}); };

  CHECK(f24->bracket(x("X2"), x("X1")) == x("X21"));
  CHECK(f24->bracket(x("X21"), x("X1")) == x("X211"));
  CHECK(f24->bracket(x("X21"), x("X2")) == x("X212"));
  CHECK(f24->bracket(x("X211"), x("X1")) == x("X2111"));
  CHECK(f24->bracket(x("X211"), x("X2")) == x("X2112"));
  CHECK(f24->bracket(x("X212"), x("X1")) == x("X2112"));
  CHECK(f24->bracket(x("X212"), x("X2")) == x("X2122"));

  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  const auto y = [&](const char* l) { return basis_combo(f33, {{l, 1}}); };
  CHECK(f33->bracket(y("X32"), y("X1")) ==
        basis_combo(f33, {{"X312", 1}, {"X213", -1}}));
}

TEST_CASE("bracket is antisymmetric and graded on random elements") {
  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  testutil::RatGen gen(5);
  for (int t = 0; t < 40; ++t) {
    const RatVec x = gen.vec(f33->dim());
    const RatVec y = gen.vec(f33->dim());
    CHECK(is_zero(f33->bracket(x, x)));
    RatVec sum = f33->bracket(x, y);
    add_scaled(sum, Rat(1), f33->bracket(y, x));
    CHECK(is_zero(sum));
  }
  // grading: brackets of pure layers land in the summed layer
  for (int i = 0; i < f33->dim(); ++i)
    for (int j = 0; j < f33->dim(); ++j) {
      const RatVec b = f33->bracket(f33->basis_vector(i), f33->basis_vector(j));
      for (int k = 0; k < f33->dim(); ++k)
        if (b[k] != 0) CHECK(f33->layer_of(k) == f33->layer_of(i) + f33->layer_of(j));
    }
}

TEST_CASE("Jacobi identity holds exactly on all basis triples of the built algebras") {
  for (const auto& alg :
       {CarnotAlgebra::free_nilpotent(2, 4), CarnotAlgebra::free_nilpotent(3, 3),
        CarnotAlgebra::free_nilpotent(2, 5), CarnotAlgebra::heisenberg(),
        CarnotAlgebra::heisenberg_pair()}) {
    CHECK_NOTHROW(alg->validate());
  }
}

TEST_CASE("ad matrix columns are brackets and nilpotency holds") {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  const auto x1 = LieElement(f24, basis_combo(f24, {{"X1", 1}}));
  const RatMat ad1 = ad_matrix(x1);
  // ad_{X1}(X2) = -X21
  const RatVec expected = basis_combo(f24, {{"X21", -1}});
  for (int i = 0; i < f24->dim(); ++i) CHECK(ad1(i, 1) == expected[i]);

  testutil::RatGen gen(17);
  for (int t = 0; t < 10; ++t) {
    const RatVec x = gen.vec(f24->dim());
    RatMat power = f24->ad(x);
    for (int k = 1; k < f24->step(); ++k) power = power * f24->ad(x);
    CHECK(power.is_zero());  // (ad_x)^step = 0
  }

  // ad of a top-layer element vanishes
  const auto top = LieElement(f24, basis_combo(f24, {{"X2122", 1}}));
  CHECK(ad_matrix(top).is_zero());
}

TEST_CASE("derivation extension reproduces the printed E_ij action on f_{2,4}") {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  const RatVec xi = basis_combo(f24, {{"X2", 1}, {"X212", 1}, {"X2111", 1}});

  auto E = [&](int i, int j) {
    RatMat m(2, 2);
    m(i - 1, j - 1) = 1;
    return extend_derivation(f24, m);
  };

  CHECK(E(1, 1)(xi) == basis_combo(f24, {{"X212", 1}, {"X2111", 3}}));
  CHECK(E(1, 2)(xi) == basis_combo(f24, {{"X1", 1}, {"X211", 1}}));
  CHECK(E(2, 2)(xi) == basis_combo(f24, {{"X2", 1}, {"X212", 2}, {"X2111", 1}}));
  CHECK(E(2, 1)(xi) == basis_combo(f24, {{"X2112", 2}}));
}

TEST_CASE("derivation extension reproduces the printed E_ij action on f_{3,3}") {
  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  const RatVec xi =
      basis_combo(f33, {{"X21", 1}, {"X31", 1}, {"X32", 1}, {"X312", 1}, {"X213", 1}});

  auto E = [&](int i, int j) {
    RatMat m(3, 3);
    m(i - 1, j - 1) = 1;
    return extend_derivation(f33, m);
  };

  CHECK(E(1, 2)(xi) == basis_combo(f33, {{"X31", 1}, {"X311", 1}}));
  CHECK(E(1, 3)(xi) == basis_combo(f33, {{"X21", -1}, {"X211", 1}}));
  CHECK(E(2, 3)(xi) == basis_combo(f33, {{"X21", 1}, {"X212", 2}}));
  CHECK(E(2, 1)(xi) == basis_combo(f33, {{"X32", 1}, {"X322", 1}}));
  CHECK(E(3, 1)(xi) == basis_combo(f33, {{"X32", -1}, {"X323", -1}}));
  CHECK(E(3, 2)(xi) == basis_combo(f33, {{"X31", 1}, {"X313", 2}}));
  CHECK(E(1, 1)(xi) == basis_combo(f33, {{"X21", 1}, {"X31", 1}, {"X213", 1}, {"X312", 1}}));
  CHECK(E(2, 2)(xi) == basis_combo(f33, {{"X21", 1}, {"X32", 1}, {"X213", 1}, {"X312", 1}}));
  CHECK(E(3, 3)(xi) == basis_combo(f33, {{"X31", 1}, {"X32", 1}, {"X213", 1}, {"X312", 1}}));
}

TEST_CASE("identity map extends to the grading derivation") {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  const Derivation D = extend_derivation(f24, RatMat::identity(2));
  for (int i = 0; i < f24->dim(); ++i) {
    const RatVec img = D(f24->basis_vector(i));
    RatVec expected = f24->basis_vector(i);
    for (auto& c : expected) c *= f24->layer_of(i);
    CHECK(img == expected);
  }
}

TEST_CASE("derivation extension satisfies Leibniz on every basis pair") {
  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  testutil::RatGen gen(23);
  RatMat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = gen();
  const Derivation D = extend_derivation(f33, m);
  for (int i = 0; i < f33->dim(); ++i)
    for (int j = i + 1; j < f33->dim(); ++j) {
      const RatVec lhs = D(f33->bracket(f33->basis_vector(i), f33->basis_vector(j)));
      RatVec rhs = f33->bracket(D(f33->basis_vector(i)), f33->basis_vector(j));
      add_scaled(rhs, Rat(1), f33->bracket(f33->basis_vector(i), D(f33->basis_vector(j))));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("inconsistent first-layer maps on a non-free algebra are rejected") {
  const auto hxh = CarnotAlgebra::heisenberg_pair();
  RatMat swap(4, 4);  // exchange the two factors' first generators only
  swap(0, 2) = 1;
  swap(2, 0) = 1;
  swap(1, 1) = 1;
  swap(3, 3) = 1;
  CHECK_THROWS_AS(extend_derivation(hxh, swap), DerivationExtensionError);
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(CarnotAlgebra::free_nilpotent(2, 10), ResourceLimitError);
  CHECK_THROWS_AS(CarnotAlgebra::free_nilpotent(3, 3, 10), ResourceLimitError);
  CHECK_NOTHROW(CarnotAlgebra::free_nilpotent(2, 10, 500));
}

TEST_CASE("load_algebra validates and reports the offending triple") {
  SUBCASE("heisenberg") {
    std::istringstream in(R"({
      "rank": 2, "step": 2, "layers": [2, 1],
      "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "num": 1, "den": 1}]}]
    })");
    const auto alg = load_algebra(in);
    CHECK(alg->dim() == 3);
  }
  SUBCASE("H x H") {
    std::istringstream in(R"({
      "rank": 4, "step": 2, "layers": [4, 2],
      "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 5, "num": 1, "den": 1}]},
        {"i": 3, "j": 4, "terms": [{"k": 6, "num": 1, "den": 1}]}
      ]
    })");
    const auto alg = load_algebra(in);
    CHECK(alg->dim() == 6);
  }
  SUBCASE("antisymmetry violation") {
    std::istringstream in(R"({
      "rank": 2, "step": 2, "layers": [2, 1],
      "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 3, "num": 1, "den": 1}]},
        {"i": 2, "j": 1, "terms": [{"k": 3, "num": 1, "den": 1}]}
      ]
    })");
    CHECK_THROWS_AS(load_algebra(in), ValidationError);
    try {
      std::istringstream in2(R"({
        "rank": 2, "step": 2, "layers": [2, 1],
        "brackets": [
          {"i": 1, "j": 2, "terms": [{"k": 3, "num": 1, "den": 1}]},
          {"i": 2, "j": 1, "terms": [{"k": 3, "num": 1, "den": 1}]}
        ]
      })");
      load_algebra(in2);
    } catch (const ValidationError& e) {
      CHECK(e.kind == ValidationError::Kind::Antisymmetry);
    }
  }
  SUBCASE("grading violation") {
    std::istringstream in(R"({
      "rank": 3, "step": 1, "layers": [3],
      "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "num": 1, "den": 1}]}]
    })");
    CHECK_THROWS_AS(load_algebra(in), ValidationError);
  }
  SUBCASE("jacobi violation names the triple") {
    std::istringstream in(R"({
      "rank": 3, "step": 3, "layers": [3, 1, 1],
      "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 4, "num": 1, "den": 1}]},
        {"i": 1, "j": 4, "terms": [{"k": 5, "num": 1, "den": 1}]},
        {"i": 3, "j": 4, "terms": [{"k": 5, "num": 1, "den": 1}]}
      ]
    })");
    try {
      load_algebra(in);
      CHECK(false);
    } catch (const ValidationError& e) {
      CHECK(e.kind == ValidationError::Kind::Jacobi);
      CHECK(e.i == 1);
      CHECK(e.j == 2);
      CHECK(e.k == 3);
    }
  }
  SUBCASE("not stratified") {
    std::istringstream in(R"({
      "rank": 3, "step": 2, "layers": [3, 2],
      "brackets": [{"i": 1, "j": 2, "terms": [{"k": 4, "num": 1, "den": 1}]}]
    })");
    try {
      load_algebra(in);
      CHECK(false);
    } catch (const ValidationError& e) {
      CHECK(e.kind == ValidationError::Kind::NotStratified);
    }
  }
}

TEST_CASE("algebra spec round-trips bit-exactly") {
  for (const auto& alg : {CarnotAlgebra::heisenberg(), CarnotAlgebra::heisenberg_pair(),
                          CarnotAlgebra::free_nilpotent(2, 4)}) {
    const std::string doc = dump_algebra(*alg);
    std::istringstream in(doc);
    const auto reloaded = load_algebra(in);
    CHECK(dump_algebra(*reloaded) == doc);
  }
}
