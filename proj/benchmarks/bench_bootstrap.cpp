#include <benchmark/benchmark.h>

#include "robusthd/bootstrap.hpp"
#include "robusthd/covariance.hpp"
#include "robusthd/distributions.hpp"

namespace {

using namespace robusthd;

void MultiplierBootstrapNorms(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto d = static_cast<Index>(state.range(1));
  const auto b = state.range(2);
  DistributionSpec dist;
  dist.nu = 3.01;
  RngStream data_rng(3, 0, 0);
  const SampleMatrix data = dist.sample(n, d, data_rng);
  const auto sched = epsilon_schedule(n, d, 0.0, 1.05, 0.07, ScheduleMode::kCovariance);
  const auto rows = winsorized_rows(data, sched);
  for (auto _ : state) {
    RngStream rng(4, 0, stream_block::kBootstrap);
    auto norms = multiplier_bootstrap_norms(rows.v, b, rng);
    benchmark::DoNotOptimize(norms.data());
  }
  state.SetItemsProcessed(state.iterations() * n * d * b);
}
BENCHMARK(MultiplierBootstrapNorms)
    ->Args({200, 500, 1000})
    ->Args({200, 5000, 1000})
    ->Unit(benchmark::kMillisecond);

void CovarianceGram(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  DistributionSpec dist;
  dist.nu = 4.01;
  RngStream data_rng(5, 0, 0);
  const SampleMatrix data = dist.sample(200, d, data_rng);
  const auto sched = epsilon_schedule(200, d, 0.0, 1.05, 0.07, ScheduleMode::kCovariance);
  const auto rows = winsorized_rows(data, sched);
  for (auto _ : state) {
    auto cov = winsorized_covariance(rows);
    benchmark::DoNotOptimize(cov.matrix.data());
  }
  state.SetItemsProcessed(state.iterations() * d * d * 200);
}
BENCHMARK(CovarianceGram)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
