#pragma once

#include <functional>
#include <span>
#include <vector>

namespace robusthd {

using CdfFn = std::function<double(double)>;
using QuantileFn = std::function<double(double)>;

// Probability-probability curve: at each grid point t the reference CDF and
// the empirical CDF of the sample. A curve on the diagonal means perfect
// distributional agreement.
struct PPCurve {
  std::vector<double> grid;
  std::vector<double> cdf_reference;
  std::vector<double> cdf_empirical;
};

// Merged quantile grid of the sample and the reference at `points` values
// (half empirical, half reference quantiles), sorted.
std::vector<double> merged_quantile_grid(std::span<const double> sample,
                                         const QuantileFn& reference_quantile, int points);

PPCurve pp_curve(std::span<const double> stat_norms, const CdfFn& reference_cdf,
                 std::vector<double> grid);

// Fraction of entries strictly exceeding the critical value.
double rejection_frequency(std::span<const double> stat_norms, double critical);

// One-sample Kolmogorov-Smirnov distance against an exact reference CDF.
double ks_distance(std::span<const double> sample, const CdfFn& reference_cdf);

}  // namespace robusthd
