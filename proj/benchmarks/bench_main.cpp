#include <benchmark/benchmark.h>

#include "polysym/aksz.hpp"
#include "polysym/graded_polysymplectic.hpp"
#include "polysym/random.hpp"

using namespace polysym;

namespace {

void BM_Multiply(benchmark::State& state) {
  random::Engine rng(1);
  random::Limits lim;
  lim.max_terms = static_cast<std::size_t>(state.range(0));
  auto c = random::chart(rng, 6, -1, 2);
  auto a = random::poly(rng, c, lim), b = random::poly(rng, c, lim);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(4)->Arg(16)->Arg(64);

void BM_DeRham(benchmark::State& state) {
  random::Engine rng(2);
  auto sc = ShiftedChart::make(random::chart(rng, 6, -1, 2));
  auto alpha = random::form(rng, sc, 3);
  for (auto _ : state) benchmark::DoNotOptimize(de_rham(alpha));
}
BENCHMARK(BM_DeRham);

void BM_CheckAxioms(benchmark::State& state) {
  auto base = Chart::make({{"x", 0}, {"p1", 0}, {"p2", 0}});
  auto sc = ShiftedChart::make(base);
  auto g = [&](const char* n) { return GradedPoly::generator(sc->chart(), n); };
  PolyForm w(sc, {g("dx") * g("dp1"), g("dx") * g("dp2")});
  auto s = from_polysymplectic(w);
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(s).passed());
}
BENCHMARK(BM_CheckAxioms);

void BM_SchwarzNormalize(benchmark::State& state) {
  auto w = canonical(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(schwarz_normalize(w).odd_matrix);
}
BENCHMARK(BM_SchwarzNormalize)->Arg(1)->Arg(2)->Arg(3);

void BM_TransgressCircle(benchmark::State& state) {
  auto omega = canonical(1, 2);
  auto src = std::make_shared<const SimplicialSource>(SimplicialSource::circle(static_cast<std::size_t>(state.range(0))));
  MappingChart mc(omega.chart()->base(), src);
  PolyForm alpha(mc.target_shifted(), omega.components());
  for (auto _ : state) benchmark::DoNotOptimize(transgress(alpha, mc, CupConvention::Symmetrized));
}
BENCHMARK(BM_TransgressCircle)->Arg(3)->Arg(6)->Arg(12);

}  // namespace
BENCHMARK_MAIN();
