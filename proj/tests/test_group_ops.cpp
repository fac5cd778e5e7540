#include <doctest.h>

#include "carnot/group.hpp"
#include "test_support.hpp"

using namespace carnot;

TEST_CASE("bch with the identity and with inverses") {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  testutil::RatGen gen(2);
  for (int t = 0; t < 25; ++t) {
    const GroupElement g(f24, gen.vec(f24->dim()));
    const GroupElement e = GroupElement::identity(f24);
    CHECK(bch_product(g, e) == g);
    CHECK(bch_product(e, g) == g);
    CHECK(bch_product(g, g.inverse()).is_identity());
  }
}

TEST_CASE("Heisenberg bch picks up the half commutator") {
  const auto h = CarnotAlgebra::heisenberg();
  const GroupElement e1(h, {Rat(1), Rat(0), Rat(0)});
  const GroupElement e2(h, {Rat(0), Rat(1), Rat(0)});
  const GroupElement p = bch_product(e1, e2);
  CHECK(p.log == RatVec{Rat(1), Rat(1), rat(1, 2)});
}

TEST_CASE("bch associativity on random rational triples, step <= 5") {
  const std::vector<AlgebraPtr> algebras = {
      CarnotAlgebra::heisenberg(),          CarnotAlgebra::free_nilpotent(2, 3),
      CarnotAlgebra::free_nilpotent(2, 4),  CarnotAlgebra::free_nilpotent(2, 5),
      CarnotAlgebra::free_nilpotent(3, 3),  CarnotAlgebra::heisenberg_pair()};
  testutil::RatGen gen(41);
  int cases = 0;
  for (const auto& alg : algebras) {
    for (int t = 0; t < 36; ++t) {
      const GroupElement a(alg, gen.vec(alg->dim()));
      const GroupElement b(alg, gen.vec(alg->dim()));
      const GroupElement c(alg, gen.vec(alg->dim()));
      CHECK(bch_product(bch_product(a, b), c) == bch_product(a, bch_product(b, c)));
      ++cases;
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("adjoint at the identity and on the top layer") {
  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  CHECK(adjoint(GroupElement::identity(f33)) == RatMat::identity(f33->dim()));

  testutil::RatGen gen(4);
  const GroupElement g(f33, gen.vec(f33->dim()));
  const RatMat Ad = adjoint(g);
  for (int k = f33->layer_begin(3); k < f33->layer_end(3); ++k) {
    for (int i = 0; i < f33->dim(); ++i) CHECK(Ad(i, k) == (i == k ? Rat(1) : Rat(0)));
  }
}

TEST_CASE("Ad is a homomorphism with determinant one") {
  const std::vector<AlgebraPtr> algebras = {CarnotAlgebra::heisenberg(),
                                            CarnotAlgebra::free_nilpotent(2, 4),
                                            CarnotAlgebra::free_nilpotent(3, 3)};
  testutil::RatGen gen(43);
  int cases = 0;
  for (const auto& alg : algebras) {
    for (int t = 0; t < 70; ++t) {
      const GroupElement g(alg, gen.vec(alg->dim()));
      const GroupElement h(alg, gen.vec(alg->dim()));
      CHECK(adjoint(bch_product(g, h)) == adjoint(g) * adjoint(h));
      ++cases;
    }
    const GroupElement g(alg, gen.vec(alg->dim()));
    CHECK(determinant(adjoint(g)) == 1);
  }
  CHECK(cases >= 200);
}

TEST_CASE("coadjoint examples") {
  const auto h = CarnotAlgebra::heisenberg();
  const Covector z(h, {Rat(0), Rat(0), Rat(1)});
  testutil::RatGen gen(6);

  SUBCASE("identity fixes everything") {
    const Covector out = coadjoint(GroupElement::identity(h), z);
    CHECK(out.c == z.c);
  }
  SUBCASE("Heisenberg golden value") {
    const Rat x1 = rat(3, 2), x2 = rat(-2), zc = rat(5, 7);
    const GroupElement g(h, {x1, x2, zc});
    const Covector out = coadjoint(g, z);
    CHECK(out.c == RatVec{-x2, x1, Rat(1)});
  }
  SUBCASE("top-layer dual component is preserved") {
    const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
    for (int t = 0; t < 20; ++t) {
      const Covector lam(f24, gen.vec(f24->dim()));
      const GroupElement g(f24, gen.vec(f24->dim()));
      const Covector out = coadjoint(g, lam);
      for (int k = f24->layer_begin(4); k < f24->layer_end(4); ++k) CHECK(out.c[k] == lam.c[k]);
    }
  }
  SUBCASE("transpose action identity") {
    const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
    for (int t = 0; t < 10; ++t) {
      const Covector lam(f33, gen.vec(f33->dim()));
      const GroupElement g(f33, gen.vec(f33->dim()));
      const Covector out = coadjoint(g, lam);
      const RatMat Ad = adjoint(g);
      for (int i = 0; i < f33->dim(); ++i)
        CHECK(out.c[i] == dot(lam.c, Ad.col(i)));
    }
  }
}

TEST_CASE("translation differentials agree on the Heisenberg closed form") {
  const auto h = CarnotAlgebra::heisenberg();
  const GroupElement g(h, {rat(1, 3), rat(2), rat(-1, 4)});
  // dL_g e1 in log coordinates: bch((x1,x2,z),(t,0,0)) has z-part
  // z + x... d/dt log(g exp(t e1)) = e1 - (1/2) x2 dz
  const RatVec d = left_translation_differential(g, h->basis_vector(0));
  CHECK(d == RatVec{Rat(1), Rat(0), -rat(2) / 2});
  const RatVec dr = right_translation_differential(g, h->basis_vector(0));
  CHECK(dr == RatVec{Rat(1), Rat(0), rat(2) / 2});
}
