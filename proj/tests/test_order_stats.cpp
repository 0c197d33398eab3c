#include <algorithm>
#include <random>
#include <vector>

#include <doctest.h>

#include "robusthd/order_stats.hpp"

using namespace robusthd;

TEST_CASE("kth order statistic on the worked sample") {
  const std::vector<double> v{5, 1, 3, 100, 2};
  CHECK(kth_order_statistic(v, 2) == 2.0);
  CHECK(kth_order_statistic(v, 1) == 1.0);
  CHECK(kth_order_statistic(v, 5) == 100.0);
}

TEST_CASE("kth order statistic keeps ties") {
  const std::vector<double> v{3, 1, 3, 3, 1};
  CHECK(kth_order_statistic(v, 1) == 1.0);
  CHECK(kth_order_statistic(v, 2) == 1.0);
  CHECK(kth_order_statistic(v, 3) == 3.0);
  CHECK(kth_order_statistic(v, 5) == 3.0);
}

TEST_CASE("kth order statistic rejects bad k") {
  const std::vector<double> v{1, 2};
  CHECK_THROWS_AS(kth_order_statistic(v, 0), std::out_of_range);
  CHECK_THROWS_AS(kth_order_statistic(v, 3), std::out_of_range);
  CHECK_THROWS_AS(kth_order_statistic({}, 1), ArgumentError);
}

TEST_CASE("kth order statistic agrees with full sort on both code paths") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int n : {5, 17, 64, 65, 200}) {
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 1; k <= n; k += std::max(1, n / 7))
      CHECK(kth_order_statistic(v, k) == sorted[k - 1]);
  }
}

TEST_CASE("clamp") {
  CHECK(clamp(100, 2, 5) == 5.0);
  CHECK(clamp(3, 2, 5) == 3.0);
  CHECK(clamp(1, 2, 5) == 2.0);
  CHECK(clamp(2, 2, 5) == 2.0);
  CHECK(clamp(5, 2, 5) == 5.0);
  CHECK_THROWS_AS(clamp(0, 5, 2), ArgumentError);
}

TEST_CASE("partition_order_range places the middle block") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> val(-9, 9);  // force ties
  for (int n : {6, 40, 90, 300}) {
    std::vector<double> v(n);
    for (auto& x : v) x = val(gen);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const std::ptrdiff_t lo = 1 + static_cast<std::ptrdiff_t>(gen() % (n / 3 + 1));
    const std::ptrdiff_t hi = n - static_cast<std::ptrdiff_t>(gen() % (n / 3 + 1));
    std::vector<double> scratch = v;
    partition_order_range(scratch, lo, hi);
    CHECK(scratch[lo - 1] == sorted[lo - 1]);
    CHECK(scratch[hi - 1] == sorted[hi - 1]);
    std::vector<double> mid(scratch.begin() + (lo - 1), scratch.begin() + hi);
    std::sort(mid.begin(), mid.end());
    const std::vector<double> want(sorted.begin() + (lo - 1), sorted.begin() + hi);
    CHECK(mid == want);
    for (std::ptrdiff_t i = 0; i < lo - 1; ++i) CHECK(scratch[i] <= sorted[lo - 1]);
    for (std::ptrdiff_t i = hi; i < n; ++i) CHECK(scratch[i] >= sorted[hi - 1]);
  }
}

TEST_CASE("compensated summation survives cancellation") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 10; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 10.0);
}
