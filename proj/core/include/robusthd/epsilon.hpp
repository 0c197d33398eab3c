#pragma once

#include <cstdint>

#include "robusthd/errors.hpp"

namespace robusthd {

// Which log term enters the winsorization fraction: log(dn) for the mean
// statistics, log(d^2 n) for the covariance estimator.
enum class ScheduleMode { kMean, kCovariance };

// Winsorization schedule: eps = lambda1 * eta_bar + lambda2 * log(arg)/n
// together with the derived 1-based order-statistic indices
// ceil(eps*n) and ceil((1-eps)*n). `valid` records eps in (0, 1/2);
// infeasibility is data, not an error.
struct EpsilonSchedule {
  ScheduleMode mode = ScheduleMode::kMean;
  std::int64_t n = 0;
  std::int64_t d = 0;
  double eta_bar = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double epsilon = 0.0;
  std::int64_t lower_index = 0;  // ceil(eps * n), 1-based
  std::int64_t upper_index = 0;  // ceil((1 - eps) * n), 1-based
  bool valid = false;

  // Trim window I_n = {lower_index, ..., upper_index}.
  std::int64_t trim_count() const { return upper_index - lower_index + 1; }
};

EpsilonSchedule epsilon_schedule(std::int64_t n, std::int64_t d, double eta_bar,
                                 double lambda1, double lambda2, ScheduleMode mode);

}  // namespace robusthd
