#pragma once

#include <span>
#include <vector>

#include "robusthd/errors.hpp"

namespace robusthd {

// phi_{a,b}: maps x below a to a, above b to b, identity on [a, b].
inline double clamp(double x, double a, double b) {
  if (a > b) throw ArgumentError("clamp: lower bound exceeds upper bound");
  if (x < a) return a;
  if (x > b) return b;
  return x;
}

// k-th smallest of v (1-based, ties kept). Selection, not a full sort.
double kth_order_statistic(std::span<const double> v, std::ptrdiff_t k);

// Rearranges scratch so that positions [lo-1, hi-1] (0-based) hold order
// statistics lo..hi (1-based, lo <= hi): everything left of lo-1 is <= the
// value there, everything right of hi-1 is >= the value there. The middle
// block itself is in no particular order. Small inputs fall back to a full
// sort; larger ones use two introselect passes.
void partition_order_range(std::span<double> scratch, std::ptrdiff_t lo, std::ptrdiff_t hi);

// Neumaier compensated summation; sums of n*d winsorized terms stay
// reproducible against the sorted brute-force reference.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value();
}

}  // namespace robusthd
