#include <doctest.h>

#include "carnot/linalg.hpp"
#include "test_support.hpp"

using namespace carnot;

TEST_CASE("rank and determinant of small exact matrices") {
  RatMat m(3, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = rat(1, 2);
  m(1, 1) = 1;
  m(1, 2) = rat(3, 2);
  m(2, 0) = 0;
  m(2, 1) = 1;
  m(2, 2) = 1;
  CHECK(rank_of(m) == 2);  // row 1 is half of row 0
  CHECK(determinant(m) == 0);

  RatMat id = RatMat::identity(4);
  CHECK(rank_of(id) == 4);
  CHECK(determinant(id) == 1);

  RatMat t(2, 2);
  t(0, 0) = rat(2, 3);
  t(0, 1) = rat(1, 5);
  t(1, 0) = rat(-1, 2);
  t(1, 1) = rat(7, 4);
  CHECK(determinant(t) == rat(2, 3) * rat(7, 4) - rat(1, 5) * rat(-1, 2));
}

TEST_CASE("nullspace vectors really solve m x = 0") {
  testutil::RatGen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t rows = 3 + trial % 3, cols = 5 + trial % 4;
    RatMat m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m(i, j) = gen();
    const auto ns = nullspace(m);
    CHECK(ns.size() == cols - rank_of(m));
    for (const auto& x : ns) CHECK(is_zero(m.apply(x)));
  }
}

TEST_CASE("solve returns an exact solution when one exists") {
  testutil::RatGen gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    RatMat m(4, 3);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 3; ++j) m(i, j) = gen();
    const RatVec x0 = gen.vec(3);
    const RatVec b = m.apply(x0);
    const auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
  }
  // inconsistent system
  RatMat m(2, 1);
  m(0, 0) = 1;
  m(1, 0) = 1;
  CHECK(!solve(m, RatVec{Rat(1), Rat(2)}).has_value());
}

TEST_CASE("span_basis spans the same space") {
  testutil::RatGen gen(3);
  std::vector<RatVec> gens;
  for (int i = 0; i < 6; ++i) gens.push_back(gen.vec(4));
  gens.push_back(gens[0]);  // force dependence
  const auto basis = span_basis(gens);
  CHECK(rank_of(RatMat::from_rows(basis)) == basis.size());
  for (const auto& g : gens) CHECK(in_span(basis, g));
}
