#include <benchmark/benchmark.h>

#include "gerbes/holonomy.hpp"
#include "gerbes/jandl.hpp"
#include "gerbes/normalize.hpp"
#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"

namespace {

using namespace gerbes;

struct Pair {
  GaugedGerbe g1, g2;
  RandomMorphism A;
};

// A: G1 -> G2 on the grid torus, both gerbes with n indices.
Pair make_pair(int n, int rank, unsigned seed) {
  Rng rng(seed);
  auto s = surfaces::torus_grid(3, 4);
  auto g1 = random_gauge(s, random_rho(*s, rng), n, rng);
  auto E = random_trivial_morphism(g1.I, rank, rng);
  auto g2 = random_gauge(s, trivial_rho(*E->tgt), n, rng);
  auto A = random_morphism(g1, E, g2, rng);
  return {g1, g2, A};
}

void BM_FiberProduct(benchmark::State& st) {
  Rng rng(1);
  auto s = surfaces::torus_grid(4, 4);
  auto c = random_cover(s, static_cast<int>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(fiber_product({c, c, c}));
}
BENCHMARK(BM_FiberProduct)->Arg(2)->Arg(4)->Arg(6);

void BM_Compose(benchmark::State& st) {
  auto p = make_pair(static_cast<int>(st.range(0)), 1, 2);
  auto inv = invert_1(p.A.A);
  for (auto _ : st) benchmark::DoNotOptimize(compose_1(inv, p.A.A));
}
BENCHMARK(BM_Compose)->Arg(1)->Arg(2)->Arg(3);

void BM_Horizontal(benchmark::State& st) {
  auto p = make_pair(static_cast<int>(st.range(0)), 1, 3);
  auto inv = invert(p.A.A);
  auto id = identity_2(inv.inv);
  for (auto _ : st) benchmark::DoNotOptimize(horizontal(id, p.A.iso));
}
BENCHMARK(BM_Horizontal)->Arg(1)->Arg(2)->Arg(3);

void BM_Normalize(benchmark::State& st) {
  auto p = make_pair(static_cast<int>(st.range(0)), 2, 4);
  for (auto _ : st) benchmark::DoNotOptimize(normalize_1(p.A.A));
}
BENCHMARK(BM_Normalize)->Arg(1)->Arg(2)->Arg(3);

void BM_HolonomyClosed(benchmark::State& st) {
  Rng rng(5);
  auto s = surfaces::torus_grid(static_cast<int>(st.range(0)), static_cast<int>(st.range(0)));
  auto g = random_gauge(s, random_rho(*s, rng), 3, rng);
  for (auto _ : st) benchmark::DoNotOptimize(holonomy_closed(g.G, 1));
}
BENCHMARK(BM_HolonomyClosed)->Arg(3)->Arg(5)->Arg(8);

void BM_HolonomyUnoriented(benchmark::State& st) {
  auto base = surfaces::klein(3, static_cast<int>(st.range(0)));
  auto oc = std::make_shared<const OrientationCover>(orientation_cover(base));
  Rng rng(6);
  auto I = trivial_gerbe(oc->cover, symmetric_rho(*oc, random_rho(*base, rng)));
  auto J = gauge_jandl(I, oc->sigma, -1);
  auto f = fundamental_domain(oc, 3);
  for (auto _ : st) benchmark::DoNotOptimize(holonomy_unoriented(I, J, f, 1));
}
BENCHMARK(BM_HolonomyUnoriented)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
