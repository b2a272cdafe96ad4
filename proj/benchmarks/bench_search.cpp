#include <benchmark/benchmark.h>

#include "kannan/search.hpp"

namespace {

using namespace kannan;

void BM_CampaignThroughput(benchmark::State& state) {
  CampaignConfig c;
  c.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(campaign(c));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CampaignThroughput)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_VerifyTheorems(benchmark::State& state) {
  GeneratorConfig g;
  g.seed = 3;
  g.size = 7;
  g.map_scheme = MapScheme::kFixedPointBiased;
  const SelfMap map = generate(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_theorems(map, 5));
  }
}
BENCHMARK(BM_VerifyTheorems);

}  // namespace

BENCHMARK_MAIN();
