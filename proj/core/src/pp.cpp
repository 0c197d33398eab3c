#include "robusthd/pp.hpp"

#include <algorithm>
#include <cmath>

#include "robusthd/errors.hpp"

namespace robusthd {

namespace {

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

// Order-statistic quantile of a sorted sample: inf{t: F_hat(t) >= p}.
double sorted_quantile(const std::vector<double>& s, double p) {
  const auto n = static_cast<double>(s.size());
  auto k = static_cast<std::size_t>(std::ceil(p * n));
  k = std::min(std::max<std::size_t>(k, 1), s.size());
  return s[k - 1];
}

}  // namespace

std::vector<double> merged_quantile_grid(std::span<const double> sample,
                                         const QuantileFn& reference_quantile, int points) {
  if (sample.empty()) throw ArgumentError("merged_quantile_grid: empty sample");
  if (points < 2) throw ArgumentError("merged_quantile_grid: needs at least 2 points");
  const std::vector<double> s = sorted_copy(sample);
  const int half = points / 2;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int k = 0; k < half; ++k) {
    const double p = (static_cast<double>(k) + 0.5) / static_cast<double>(half);
    grid.push_back(sorted_quantile(s, p));
  }
  for (int k = 0; k < points - half; ++k) {
    const double p = (static_cast<double>(k) + 0.5) / static_cast<double>(points - half);
    grid.push_back(reference_quantile(p));
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

PPCurve pp_curve(std::span<const double> stat_norms, const CdfFn& reference_cdf,
                 std::vector<double> grid) {
  if (stat_norms.empty()) throw ArgumentError("pp_curve: empty sample");
  const std::vector<double> s = sorted_copy(stat_norms);
  const auto n = static_cast<double>(s.size());
  PPCurve curve;
  curve.grid = std::move(grid);
  curve.cdf_reference.reserve(curve.grid.size());
  curve.cdf_empirical.reserve(curve.grid.size());
  for (double t : curve.grid) {
    curve.cdf_reference.push_back(reference_cdf(t));
    const auto count = std::upper_bound(s.begin(), s.end(), t) - s.begin();
    curve.cdf_empirical.push_back(static_cast<double>(count) / n);
  }
  return curve;
}

double rejection_frequency(std::span<const double> stat_norms, double critical) {
  if (stat_norms.empty()) throw ArgumentError("rejection_frequency: empty sample");
  std::size_t count = 0;
  for (double v : stat_norms) count += v > critical ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(stat_norms.size());
}

double ks_distance(std::span<const double> sample, const CdfFn& reference_cdf) {
  if (sample.empty()) throw ArgumentError("ks_distance: empty sample");
  const std::vector<double> s = sorted_copy(sample);
  const auto n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = reference_cdf(s[i]);
    const double hi = static_cast<double>(i + 1) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

}  // namespace robusthd
