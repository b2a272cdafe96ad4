#include <benchmark/benchmark.h>

#include "kannan/classifiers.hpp"
#include "kannan/search.hpp"

namespace {

using namespace kannan;

SelfMap instance(std::size_t size) {
  GeneratorConfig c;
  c.seed = 17;
  c.size = size;
  c.scheme = MetricScheme::kClosure;
  c.map_scheme = MapScheme::kFixedPointBiased;
  return generate(c);
}

// Subset scan over C(|X|, n); an infinite ratio ends it early.
void BM_NPointEnumeration(benchmark::State& state) {
  const SelfMap map = instance(static_cast<std::size_t>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(npk_min_coefficient(map, n));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NPointEnumeration)
    ->Args({8, 4})
    ->Args({12, 4})
    ->Args({12, 6})
    ->Args({16, 5});

void BM_PairwiseEnumeration(benchmark::State& state) {
  const SelfMap map = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpd_min_coefficient(map, 4));
  }
}
BENCHMARK(BM_PairwiseEnumeration)->Arg(8)->Arg(12);

void BM_SeparationFamily(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SelfMap e = make_separation_family(n, Rational(static_cast<long>(n * (n + 1))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(npk_min_coefficient(e, n - 1));
  }
}
BENCHMARK(BM_SeparationFamily)->DenseRange(4, 10, 2);

}  // namespace
