#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "robusthd/gaussian.hpp"
#include "robusthd/rng.hpp"

namespace robusthd {

// One multiplier draw n^{-1/2} sum_i xi_i V_i with standard normal xi.
// Conditional on V its law is N_d(0, V'V / n); no matrix square root is
// ever formed.
Eigen::VectorXd multiplier_bootstrap_draw(const Eigen::MatrixXd& v, RngStream& rng);

// Sup norms of `draws` multiplier draws, batched through a rank-n GEMM.
// `scale`, when non-null, divides coordinate j by (*scale)[j] before the
// norm (the correlation-form bootstrap); entries must be positive.
std::vector<double> multiplier_bootstrap_norms(const Eigen::MatrixXd& v, std::int64_t draws,
                                               RngStream& rng,
                                               const Eigen::VectorXd* scale = nullptr);

// Like above but also records the plain (unscaled) norms; one GEMM serves
// both the covariance-form and correlation-form critical values.
void multiplier_bootstrap_norms2(const Eigen::MatrixXd& v, std::int64_t draws, RngStream& rng,
                                 const Eigen::VectorXd& scale, std::vector<double>& plain,
                                 std::vector<double>& scaled);

// Empirical (1 - alpha) quantile, order statistic ceil((1-alpha) * B).
double empirical_upper_quantile(std::vector<double> values, double alpha);

// Bootstrap critical value from the winsorized rows; all-zero rows yield
// value 0 with the degeneracy flag set.
CriticalValue bootstrap_critical_value(const Eigen::MatrixXd& v, double alpha, std::int64_t b,
                                       RngStream& rng);

}  // namespace robusthd
