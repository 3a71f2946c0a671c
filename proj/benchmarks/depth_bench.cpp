#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "ufg/depth.hpp"
#include "ufg/family.hpp"

namespace {

void BM_SingleDepth(benchmark::State& state) {
  std::mt19937_64 rng(31);
  const auto sample = gen::random_sample(rng, 6, static_cast<int>(state.range(0)), 200);
  const auto family = ufg::enumerate_ufg_family(sample);
  const ufg::DepthEvaluator evaluator(family);
  std::vector<ufg::Poset> probes;
  for (int i = 0; i < 32; ++i) probes.push_back(gen::random_poset(rng, 6, 0.3));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluator.depth(probes[i++ % probes.size()]));
  }
  state.counters["sets"] = static_cast<double>(family.sets.size());
}
BENCHMARK(BM_SingleDepth)->Arg(10)->Arg(25);

// Arguments: item count, threads.
void BM_DepthMapAllPosets(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(37);
  const auto sample = gen::random_sample(rng, m, 15, 200);
  const auto family = ufg::enumerate_ufg_family(sample);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ufg::depth_map(family, ufg::DepthScope::kAllPosets, {}, {},
                                            static_cast<int>(state.range(1))));
  }
}
BENCHMARK(BM_DepthMapAllPosets)
    ->Args({4, 1})
    ->Args({5, 1})
    ->Args({5, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace
