#include <string>

#include <benchmark/benchmark.h>

#include "chordarr/construction.hpp"

using namespace chordarr;

static void BM_RegionAreas(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(region_areas());
}
BENCHMARK(BM_RegionAreas)->Unit(benchmark::kMillisecond);

static void BM_ExtractWindow(benchmark::State& state) {
  const Pattern p = Pattern::parse("twelve:" + std::to_string(state.range(0)));
  const Window w{{Rational(1, 7), Rational(1, 11)}, Rational(3), std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(extract_from_pattern(p, w));
}
BENCHMARK(BM_ExtractWindow)->Arg(5)->Arg(21)->Unit(benchmark::kMillisecond);
