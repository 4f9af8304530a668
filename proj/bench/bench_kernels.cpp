// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "hadwiger/bramble.hpp"
#include "hadwiger/fractional.hpp"
#include "hadwiger/graph.hpp"
#include "hadwiger/width.hpp"

using namespace hadwiger;

namespace {

Graph sample(benchmark::State& state) {
  return random_gnp(static_cast<std::size_t>(state.range(0)), Rational(1, 2), 17);
}

void BM_FractionalParallel(benchmark::State& state) {
  const Graph g = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_hadwiger(g, TouchingKind::kWeak));
}

void BM_FractionalSerial(benchmark::State& state) {
  const Graph g = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_hadwiger_serial(g, TouchingKind::kWeak));
}

void BM_BramblesParallel(benchmark::State& state) {
  const Graph g = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_brambles(g, TouchingKind::kStrong));
}

void BM_BramblesSerial(benchmark::State& state) {
  const Graph g = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_brambles_serial(g, TouchingKind::kStrong));
}

void BM_SeparationParallel(benchmark::State& state) {
  const Graph g = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(separation_number(g));
}

void BM_SeparationSerial(benchmark::State& state) {
  const Graph g = sample(state);
  for (auto _ : state) benchmark::DoNotOptimize(separation_number_serial(g));
}

}  // namespace

BENCHMARK(BM_FractionalParallel)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FractionalSerial)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BramblesParallel)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BramblesSerial)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparationParallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparationSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
