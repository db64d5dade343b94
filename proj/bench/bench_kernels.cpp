#include <benchmark/benchmark.h>
#include <omp.h>

#include "kbp/closure.hpp"
#include "kbp/experiment.hpp"
#include "kbp/reference.hpp"

namespace {

// Density scaled as 8.4/n, near the empirical K_{3,3} threshold for mid-size n.
// The rescanning reference enumerates vertex subsets, so it only gets small n.
constexpr double kDensity = 0.28;

void BM_ClosureIncremental(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const kbp::Graph g = kbp::sample_gnp({n, kDensity * 30.0 / static_cast<double>(n), 17});
  const kbp::Pattern pattern = kbp::Pattern::make(3, 3);
  kbp::ClosureOptions options;
  options.record_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(kbp::closure(g, pattern, options).final.edge_count());
}
BENCHMARK(BM_ClosureIncremental)->Arg(12)->Arg(16)->Arg(60)->Arg(120);

void BM_ClosureNaive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const kbp::Graph g = kbp::sample_gnp({n, kDensity * 30.0 / static_cast<double>(n), 17});
  const kbp::Pattern pattern = kbp::Pattern::make(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(kbp::reference::naive_closure(g, pattern).edge_count());
}
BENCHMARK(BM_ClosureNaive)->Arg(12)->Arg(16);

void BM_EstimateSerial(benchmark::State& state) {
  const kbp::TrialBatch batch{120, kbp::Pattern::make(3, 3), 0.08, 64, 5};
  for (auto _ : state) benchmark::DoNotOptimize(kbp::estimate_probability_serial(batch).successes);
}
BENCHMARK(BM_EstimateSerial)->Unit(benchmark::kMillisecond);

void BM_EstimateParallel(benchmark::State& state) {
  const kbp::TrialBatch batch{120, kbp::Pattern::make(3, 3), 0.08, 64, 5};
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kbp::estimate_probability(batch).successes);
  state.counters["threads"] = static_cast<double>(state.range(0));
}
BENCHMARK(BM_EstimateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
