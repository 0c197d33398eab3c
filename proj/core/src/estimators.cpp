#include "robusthd/estimators.hpp"

#include <cmath>

namespace robusthd {

namespace {

void check_schedule(const SampleMatrix& data, const EpsilonSchedule& sched) {
  data.validate();
  if (!sched.valid)
    throw PreconditionError("estimator: epsilon schedule infeasible (eps outside (0, 1/2))");
  if (sched.n != data.n())
    throw PreconditionError("estimator: schedule was built for a different n");
}

void check_mu(const SampleMatrix& data, const Eigen::VectorXd& mu) {
  if (mu.size() != data.d()) throw ArgumentError("estimator: mu has wrong dimension");
  if (!mu.allFinite()) throw ArgumentError("estimator: mu has non-finite entries");
}

}  // namespace

WinsorizedColumns winsorize_columns(const SampleMatrix& data, const EpsilonSchedule& sched) {
  check_schedule(data, sched);
  const Index n = data.n();
  const Index d = data.d();
  const auto lo = static_cast<std::ptrdiff_t>(sched.lower_index);
  const auto hi = static_cast<std::ptrdiff_t>(sched.upper_index);

  WinsorizedColumns out;
  out.alpha.resize(d);
  out.beta.resize(d);
  out.sums.resize(d);
  out.trim_sums.resize(d);

  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (Index j = 0; j < d; ++j) {
    const double* col = data.values.col(j).data();
    std::copy(col, col + n, scratch.begin());
    partition_order_range(scratch, lo, hi);

    const double a = scratch[static_cast<std::size_t>(lo - 1)];
    const double b = scratch[static_cast<std::size_t>(hi - 1)];
    // After partitioning, entries left of lo-1 are <= a and clamp to a,
    // entries right of hi-1 are >= b and clamp to b; the middle block is
    // untouched by the clamp.
    CompensatedSum mid;
    for (std::ptrdiff_t i = lo - 1; i < hi; ++i) mid.add(scratch[static_cast<std::size_t>(i)]);
    const double middle = mid.value();
    out.alpha[j] = a;
    out.beta[j] = b;
    out.trim_sums[j] = middle;
    out.sums[j] = middle + static_cast<double>(lo - 1) * a + static_cast<double>(n - hi) * b;
  }
  return out;
}

MeanStatistic winsorized_mean(const SampleMatrix& data, const Eigen::VectorXd& mu,
                              const EpsilonSchedule& sched) {
  check_mu(data, mu);
  const WinsorizedColumns cols = winsorize_columns(data, sched);
  const double n = static_cast<double>(data.n());
  MeanStatistic s;
  s.kind = StatisticKind::kWinsorized;
  s.centered_at = mu;
  s.values = (cols.sums - n * mu) / std::sqrt(n);
  return s;
}

MeanStatistic trimmed_mean(const SampleMatrix& data, const Eigen::VectorXd& mu,
                           const EpsilonSchedule& sched) {
  check_mu(data, mu);
  if (sched.valid && sched.trim_count() < 1)
    throw PreconditionError("trimmed_mean: empty trim window");
  const WinsorizedColumns cols = winsorize_columns(data, sched);
  const double n = static_cast<double>(data.n());
  const double size = static_cast<double>(sched.trim_count());
  MeanStatistic s;
  s.kind = StatisticKind::kTrimmed;
  s.centered_at = mu;
  s.values = std::sqrt(n) / size * (cols.trim_sums - size * mu);
  return s;
}

MeanStatistic winsorized_location(const SampleMatrix& data, const EpsilonSchedule& sched_cov) {
  if (sched_cov.mode != ScheduleMode::kCovariance)
    throw PreconditionError("winsorized_location: expects a covariance-mode schedule");
  const WinsorizedColumns cols = winsorize_columns(data, sched_cov);
  MeanStatistic s;
  s.kind = StatisticKind::kLocation;
  s.centered_at = Eigen::VectorXd::Zero(data.d());
  s.values = cols.sums / static_cast<double>(data.n());
  return s;
}

MeanStatistic normalized_winsorized_mean(const MeanStatistic& winsorized,
                                         const Eigen::VectorXd& sigma_tilde) {
  if (sigma_tilde.size() != winsorized.values.size())
    throw ArgumentError("normalized_winsorized_mean: sigma_tilde has wrong dimension");
  if ((sigma_tilde.array() <= 0.0).any())
    throw DegenerateScaleError("normalized_winsorized_mean: nonpositive scale estimate");
  MeanStatistic s;
  s.kind = StatisticKind::kNormalizedWinsorized;
  s.centered_at = winsorized.centered_at;
  s.values = winsorized.values.array() / sigma_tilde.array();
  return s;
}

MeanStatistic normalized_winsorized_mean(const SampleMatrix& data, const Eigen::VectorXd& mu,
                                         const EpsilonSchedule& sched,
                                         const Eigen::VectorXd& sigma_tilde) {
  return normalized_winsorized_mean(winsorized_mean(data, mu, sched), sigma_tilde);
}

}  // namespace robusthd
