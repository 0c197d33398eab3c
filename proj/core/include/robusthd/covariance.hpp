#pragma once

#include "robusthd/estimators.hpp"

namespace robusthd {

// Symmetric PSD winsorized covariance estimate with its diagonal scales and
// the schedule that produced it.
struct RobustCovariance {
  Eigen::MatrixXd matrix;   // d x d, computed as a Gram product
  Eigen::VectorXd diag_sd;  // sigma_tilde_j = sqrt(matrix(j, j))
  EpsilonSchedule schedule;
};

// Eq-level report of the schedule feasibility condition
//   2 eps' + L + sqrt(L^2 + 4 L eps') < 1,  L = log(d^2 n)/n.
// Violation is a warning attached to results, never a hard failure.
struct FeasibilityReport {
  double lhs_value = 0.0;
  bool satisfied = false;
  double component_eps = 0.0;   // 2 eps'
  double component_log = 0.0;   // L
  double component_root = 0.0;  // sqrt(L^2 + 4 L eps')
};

// Winsorized-and-centered rows V (n x d): row i holds
// phi_{a_j,b_j}(x_ij) - mu_tilde_j. The covariance estimator is V'V/n and
// multiplier bootstrap draws are V' xi / sqrt(n), so large-d callers can
// work from V without ever materializing the d x d matrix.
struct WinsorizedRows {
  Eigen::MatrixXd v;
  Eigen::VectorXd location;  // mu_tilde
  EpsilonSchedule schedule;

  Eigen::VectorXd diag_sd() const {
    return (v.colwise().squaredNorm() / static_cast<double>(v.rows())).cwiseSqrt();
  }
};

WinsorizedRows winsorized_rows(const SampleMatrix& data, const EpsilonSchedule& sched_cov);

RobustCovariance winsorized_covariance(const SampleMatrix& data,
                                       const EpsilonSchedule& sched_cov);
RobustCovariance winsorized_covariance(const WinsorizedRows& rows);

// Correlation form D^{-1} Sigma D^{-1}; unit diagonal enforced exactly.
RobustCovariance correlation_normalize(const RobustCovariance& cov);

// `eps_prime` is evaluated as given; pair with epsilon_schedule to derive it.
FeasibilityReport feasibility_condition(std::int64_t n, std::int64_t d, double eps_prime);

// eta_bar = 0 simplification: (2 l2' + 1 + sqrt(1 + 4 l2')) log(d^2 n)/n < 1.
FeasibilityReport feasibility_condition_eta_zero(std::int64_t n, std::int64_t d,
                                                 double lambda2_prime);

}  // namespace robusthd
