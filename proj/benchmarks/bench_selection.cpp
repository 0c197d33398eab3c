#include <algorithm>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "robusthd/order_stats.hpp"

namespace {

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

void SelectionPartition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto base = random_values(n);
  std::vector<double> scratch(n);
  const auto lo = static_cast<std::ptrdiff_t>(n / 50 + 1);
  const auto hi = static_cast<std::ptrdiff_t>(n - n / 50);
  for (auto _ : state) {
    std::copy(base.begin(), base.end(), scratch.begin());
    robusthd::partition_order_range(scratch, lo, hi);
    benchmark::DoNotOptimize(scratch.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(SelectionPartition)->RangeMultiplier(4)->Range(64, 65536);

void FullSortBaseline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto base = random_values(n);
  std::vector<double> scratch(n);
  for (auto _ : state) {
    std::copy(base.begin(), base.end(), scratch.begin());
    std::sort(scratch.begin(), scratch.end());
    benchmark::DoNotOptimize(scratch.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(FullSortBaseline)->RangeMultiplier(4)->Range(64, 65536);

}  // namespace

BENCHMARK_MAIN();
