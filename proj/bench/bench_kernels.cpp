// Serial reference vs OpenMP path for the three heavy Monte-Carlo kernels.
// Both paths compute identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "jante/experiments.hpp"
#include "jante/verification.hpp"

namespace {

using jante::Execution;

Execution policy(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp x" + std::to_string(omp_get_max_threads()));
}

void BM_AbsorbHist(benchmark::State& state) {
  jante::ExperimentSpec spec;
  spec.topology = "cycle:20";
  spec.distribution = jante::DistributionSpec::discrete(10);
  spec.runs = 200;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jante::run_absorb_hist(spec, policy(state)).summary.mean);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.runs));
  label(state);
}

void BM_DriftSweep(benchmark::State& state) {
  const std::size_t samples = 200'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jante::check_drift_sign(samples, 7, policy(state)).extreme);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples));
  label(state);
}

void BM_RateEstimate(benchmark::State& state) {
  jante::ExperimentSpec spec;
  spec.kind = jante::ExperimentKind::rate_estimate;
  spec.topology = "cycle:20";
  spec.distribution = jante::DistributionSpec::uniform01();
  spec.runs = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jante::run_rate_estimate(spec, policy(state)).summary.median);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.runs * spec.embedded_steps));
  label(state);
}

}  // namespace

BENCHMARK(BM_AbsorbHist)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DriftSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RateEstimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
