#include "robusthd/order_stats.hpp"

#include <algorithm>
#include <cmath>

namespace robusthd {

namespace {
constexpr std::ptrdiff_t kFullSortCutoff = 64;
}

double kth_order_statistic(std::span<const double> v, std::ptrdiff_t k) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  if (n == 0) throw ArgumentError("kth_order_statistic: empty input");
  if (k < 1 || k > n) throw std::out_of_range("kth_order_statistic: k out of [1, n]");
  std::vector<double> scratch(v.begin(), v.end());
  if (n <= kFullSortCutoff) {
    std::sort(scratch.begin(), scratch.end());
    return scratch[static_cast<std::size_t>(k - 1)];
  }
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
  return scratch[static_cast<std::size_t>(k - 1)];
}

void partition_order_range(std::span<double> scratch, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  const auto n = static_cast<std::ptrdiff_t>(scratch.size());
  if (n == 0) throw ArgumentError("partition_order_range: empty input");
  if (lo < 1 || hi > n || lo > hi)
    throw std::out_of_range("partition_order_range: bad index range");
  if (n <= kFullSortCutoff) {
    std::sort(scratch.begin(), scratch.end());
    return;
  }
  auto first = scratch.begin();
  std::nth_element(first, first + (hi - 1), scratch.end());
  std::nth_element(first, first + (lo - 1), first + (hi - 1));
}

}  // namespace robusthd
