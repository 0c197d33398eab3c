#pragma once

#include <vector>

#include "robusthd/epsilon.hpp"
#include "robusthd/order_stats.hpp"
#include "robusthd/sample_matrix.hpp"

namespace robusthd {

enum class StatisticKind { kWinsorized, kTrimmed, kNormalizedWinsorized, kLocation };

// d-vector statistic. For kLocation the entries are plain winsorized sample
// means (no sqrt(n) scaling); all other kinds carry the sqrt(n) scaling of
// the centered statistics.
struct MeanStatistic {
  Eigen::VectorXd values;
  StatisticKind kind = StatisticKind::kWinsorized;
  Eigen::VectorXd centered_at;

  double sup_norm() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

// Per-coordinate winsorization summary at a given schedule: the clamp
// thresholds (order statistics at the schedule indices) and the column sums
// of the clamped values.
struct WinsorizedColumns {
  Eigen::VectorXd alpha;      // lower thresholds, one per coordinate
  Eigen::VectorXd beta;       // upper thresholds
  Eigen::VectorXd sums;       // sum_i phi_{alpha,beta}(x_ij)
  Eigen::VectorXd trim_sums;  // sum of order statistics lower..upper
};

// One selection pass per coordinate; feeds the winsorized, trimmed and
// location statistics without re-sorting.
WinsorizedColumns winsorize_columns(const SampleMatrix& data, const EpsilonSchedule& sched);

// S_{n,W}: per coordinate n^{-1/2} sum_i (phi_{alpha_j,beta_j}(x_ij) - mu_j)
// with thresholds at the schedule's order-statistic indices.
MeanStatistic winsorized_mean(const SampleMatrix& data, const Eigen::VectorXd& mu,
                              const EpsilonSchedule& sched);

// S_{n,T}: the mean of the order statistics inside the trim window,
// centered and scaled by sqrt(n).
MeanStatistic trimmed_mean(const SampleMatrix& data, const Eigen::VectorXd& mu,
                           const EpsilonSchedule& sched);

// mu_tilde: unscaled winsorized sample means at a covariance-mode schedule.
MeanStatistic winsorized_location(const SampleMatrix& data, const EpsilonSchedule& sched_cov);

// S_{n,W,S}: coordinatewise quotient of the winsorized mean by sigma_tilde.
// Any nonpositive scale raises DegenerateScaleError; the quotient is left
// undefined rather than floored.
MeanStatistic normalized_winsorized_mean(const SampleMatrix& data, const Eigen::VectorXd& mu,
                                         const EpsilonSchedule& sched,
                                         const Eigen::VectorXd& sigma_tilde);

MeanStatistic normalized_winsorized_mean(const MeanStatistic& winsorized,
                                         const Eigen::VectorXd& sigma_tilde);

}  // namespace robusthd
