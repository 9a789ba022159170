#include <benchmark/benchmark.h>

#include "chordarr/counter.hpp"
#include "chordarr/independence.hpp"

using namespace chordarr;

static void BM_PseudolineCount(benchmark::State& state) {
  const Matching m = pseudoline_matching(static_cast<int>(state.range(0)));
  CountOptions o;
  o.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_arrangements(m, o));
}
BENCHMARK(BM_PseudolineCount)->Args({6, 1})->Args({7, 1})->Args({8, 1})->Args({8, 4})->Unit(benchmark::kMillisecond);

static void BM_FamilyCount(benchmark::State& state) {
  const Matching m = family_matching({2, 2, 2, 2});
  CountOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(count_arrangements(m, o));
}
BENCHMARK(BM_FamilyCount)->Unit(benchmark::kMillisecond);

static void BM_IndependenceSplit(benchmark::State& state) {
  // Two disjoint pseudoline blocks of order four: splits cleanly.
  const Matching m = Matching::from_pairs(
      {{0, 4}, {1, 5}, {2, 6}, {3, 7}, {8, 12}, {9, 13}, {10, 14}, {11, 15}});
  IndependenceOptions o;
  o.threads = 1;
  o.weight_samples = 8;
  for (auto _ : state) benchmark::DoNotOptimize(count_with_independence(m, o));
}
BENCHMARK(BM_IndependenceSplit)->Unit(benchmark::kMillisecond);
