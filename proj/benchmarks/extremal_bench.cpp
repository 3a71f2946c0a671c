#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "ufg/extremal.hpp"
#include "ufg/family.hpp"

namespace {

// Arguments: item count, distinct posets, direction (0 max, 1 min).
void BM_SolveExtremal(benchmark::State& state) {
  std::mt19937_64 rng(41);
  const auto sample = gen::random_sample(rng, static_cast<int>(state.range(0)),
                                         static_cast<int>(state.range(1)), 100, 0.3);
  ufg::FamilyOptions fo;
  fo.cap_override = 3;
  const auto family = ufg::enumerate_ufg_family(sample, fo);
  ufg::ExtremalOptions options;
  options.direction = state.range(2) == 0 ? ufg::Direction::kMax : ufg::Direction::kMin;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto solution = ufg::solve_extremal(family, options);
    nodes = solution.nodes;
    benchmark::DoNotOptimize(solution.ranked.data());
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.counters["sets"] = static_cast<double>(family.sets.size());
}
BENCHMARK(BM_SolveExtremal)
    ->Args({6, 10, 0})
    ->Args({6, 10, 1})
    ->Args({7, 12, 0})
    ->Args({7, 12, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
