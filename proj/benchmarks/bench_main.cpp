#include <benchmark/benchmark.h>

#include "carnot/endpoint.hpp"
#include "carnot/prolong.hpp"
#include "carnot/step2.hpp"

using namespace carnot;

static void BM_BuildFreeNilpotent(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto alg = CarnotAlgebra::free_nilpotent(r, s);
    benchmark::DoNotOptimize(alg);
  }
}
BENCHMARK(BM_BuildFreeNilpotent)->Args({2, 4})->Args({3, 3})->Args({2, 6})->Args({4, 3});

static void BM_BchProduct(benchmark::State& state) {
  const auto f33 = CarnotAlgebra::free_nilpotent(3, 3);
  RatVec a(f33->dim()), b(f33->dim());
  for (int i = 0; i < f33->dim(); ++i) {
    a[i] = rat(i + 1, 3);
    b[i] = rat(2 * i - 5, 7);
  }
  const GroupElement g(f33, a), h(f33, b);
  for (auto _ : state) {
    auto p = bch_product(g, h);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_BchProduct);

static void BM_AbnormalCertificate(benchmark::State& state) {
  const auto hxh = CarnotAlgebra::heisenberg_pair();
  RatVec u1(hxh->dim(), Rat(0)), u2(hxh->dim(), Rat(0));
  u1[0] = 1;
  u2[1] = rat(1, 2);
  const auto u = PiecewiseControl::uniform(hxh, {u1, u2});
  for (auto _ : state) {
    auto cert = is_abnormal(u);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_AbnormalCertificate);

static void BM_CriterionInfinitesimal(benchmark::State& state) {
  const auto f24 = CarnotAlgebra::free_nilpotent(2, 4);
  const Prolongation P(f24);
  const RatVec xi = sample_xi(P, 1, 0);
  for (auto _ : state) {
    auto res = criterion_infinitesimal(P, P.embed_base(xi));
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_CriterionInfinitesimal);

static void BM_Step2Oracle(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  Step2Point p;
  p.v.assign(r, Rat(0));
  p.xi = Bivector(r);
  p.v[0] = 1;
  p.xi.at(0, 1) = 1;
  if (r >= 4) p.xi.at(2, 3) = rat(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_abnormal_point(p));
    benchmark::DoNotOptimize(pfaffian_membership(p));
  }
}
BENCHMARK(BM_Step2Oracle)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
