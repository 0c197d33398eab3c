#include "robusthd/covariance.hpp"

#include <cmath>

namespace robusthd {

WinsorizedRows winsorized_rows(const SampleMatrix& data, const EpsilonSchedule& sched_cov) {
  if (sched_cov.mode != ScheduleMode::kCovariance)
    throw PreconditionError("winsorized_rows: expects a covariance-mode schedule");
  const WinsorizedColumns cols = winsorize_columns(data, sched_cov);
  const Index n = data.n();
  const Index d = data.d();

  WinsorizedRows out;
  out.schedule = sched_cov;
  out.location = cols.sums / static_cast<double>(n);
  out.v.resize(n, d);
  for (Index j = 0; j < d; ++j) {
    const double a = cols.alpha[j];
    const double b = cols.beta[j];
    const double m = out.location[j];
    const double* src = data.values.col(j).data();
    double* dst = out.v.col(j).data();
    for (Index i = 0; i < n; ++i) {
      const double x = src[i];
      dst[i] = (x < a ? a : (x > b ? b : x)) - m;
    }
  }
  return out;
}

RobustCovariance winsorized_covariance(const WinsorizedRows& rows) {
  const double n = static_cast<double>(rows.v.rows());
  RobustCovariance cov;
  cov.schedule = rows.schedule;
  cov.matrix.resize(rows.v.cols(), rows.v.cols());
  // Rank-n Gram update writes each unordered pair once; symmetry is exact.
  cov.matrix.setZero();
  cov.matrix.selfadjointView<Eigen::Lower>().rankUpdate(rows.v.transpose(), 1.0 / n);
  cov.matrix.triangularView<Eigen::StrictlyUpper>() =
      cov.matrix.triangularView<Eigen::StrictlyLower>().transpose();
  cov.diag_sd = cov.matrix.diagonal().cwiseSqrt();
  return cov;
}

RobustCovariance winsorized_covariance(const SampleMatrix& data,
                                       const EpsilonSchedule& sched_cov) {
  return winsorized_covariance(winsorized_rows(data, sched_cov));
}

RobustCovariance correlation_normalize(const RobustCovariance& cov) {
  if ((cov.diag_sd.array() <= 0.0).any())
    throw DegenerateScaleError("correlation_normalize: zero diagonal entry");
  const Eigen::VectorXd inv = cov.diag_sd.cwiseInverse();
  RobustCovariance out;
  out.schedule = cov.schedule;
  out.matrix = inv.asDiagonal() * cov.matrix * inv.asDiagonal();
  out.matrix.diagonal().setOnes();
  out.diag_sd = Eigen::VectorXd::Ones(cov.matrix.rows());
  return out;
}

FeasibilityReport feasibility_condition(std::int64_t n, std::int64_t d, double eps_prime) {
  if (n <= 3) throw ArgumentError("feasibility_condition: requires n > 3");
  if (d < 1) throw ArgumentError("feasibility_condition: requires d >= 1");
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw ArgumentError("feasibility_condition: eps_prime must lie in (0, 1)");
  const double log_term =
      (2.0 * std::log(static_cast<double>(d)) + std::log(static_cast<double>(n))) /
      static_cast<double>(n);
  FeasibilityReport r;
  r.component_eps = 2.0 * eps_prime;
  r.component_log = log_term;
  r.component_root = std::sqrt(log_term * log_term + 4.0 * log_term * eps_prime);
  r.lhs_value = r.component_eps + r.component_log + r.component_root;
  r.satisfied = r.lhs_value < 1.0;
  return r;
}

FeasibilityReport feasibility_condition_eta_zero(std::int64_t n, std::int64_t d,
                                                 double lambda2_prime) {
  if (!(lambda2_prime > 0.0))
    throw ArgumentError("feasibility_condition_eta_zero: lambda2_prime must be positive");
  const double log_term =
      (2.0 * std::log(static_cast<double>(d)) + std::log(static_cast<double>(n))) /
      static_cast<double>(n);
  const double factor = 2.0 * lambda2_prime + 1.0 + std::sqrt(1.0 + 4.0 * lambda2_prime);
  FeasibilityReport r;
  r.component_eps = 2.0 * lambda2_prime * log_term;
  r.component_log = log_term;
  r.component_root = std::sqrt(1.0 + 4.0 * lambda2_prime) * log_term;
  r.lhs_value = factor * log_term;
  r.satisfied = r.lhs_value < 1.0;
  return r;
}

}  // namespace robusthd
