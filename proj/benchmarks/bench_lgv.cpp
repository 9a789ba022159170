#include <benchmark/benchmark.h>

#include "chordarr/lgv.hpp"

using namespace chordarr;

static void BM_LgvCount(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lgv_count(s));
}
BENCHMARK(BM_LgvCount)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);
