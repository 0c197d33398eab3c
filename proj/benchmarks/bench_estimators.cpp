#include <benchmark/benchmark.h>

#include "robusthd/distributions.hpp"
#include "robusthd/covariance.hpp"
#include "robusthd/estimators.hpp"

namespace {

using namespace robusthd;

void WinsorizedMean(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto d = static_cast<Index>(state.range(1));
  DistributionSpec dist;
  dist.nu = 3.01;
  RngStream rng(1, 0, 0);
  const SampleMatrix data = dist.sample(n, d, rng);
  const auto sched = epsilon_schedule(n, d, 0.0, 1.05, 0.1, ScheduleMode::kMean);
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
  for (auto _ : state) {
    auto stat = winsorized_mean(data, mu, sched);
    benchmark::DoNotOptimize(stat.values.data());
  }
  state.SetItemsProcessed(state.iterations() * n * d);
}
BENCHMARK(WinsorizedMean)->Args({200, 500})->Args({200, 5000})->Args({3200, 50});

void WinsorizedRowsPass(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const auto d = static_cast<Index>(state.range(1));
  DistributionSpec dist;
  dist.nu = 3.01;
  RngStream rng(2, 0, 0);
  const SampleMatrix data = dist.sample(n, d, rng);
  const auto sched = epsilon_schedule(n, d, 0.0, 1.05, 0.07, ScheduleMode::kCovariance);
  for (auto _ : state) {
    auto rows = winsorized_rows(data, sched);
    benchmark::DoNotOptimize(rows.v.data());
  }
  state.SetItemsProcessed(state.iterations() * n * d);
}
BENCHMARK(WinsorizedRowsPass)->Args({200, 500})->Args({200, 5000});

}  // namespace
