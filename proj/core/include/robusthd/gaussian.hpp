#pragma once

#include <optional>

#include <Eigen/Dense>

#include "robusthd/rng.hpp"

namespace robusthd {

// Target N_d(0, Sigma). Diagonal specs carry only the variance vector and
// never factorize; full specs factorize lazily (lower-triangular, one jitter
// retry on near-PSD input).
class GaussianSpec {
 public:
  static GaussianSpec diagonal(Eigen::VectorXd variances);
  static GaussianSpec full(Eigen::MatrixXd covariance);

  Eigen::Index dim() const { return dim_; }
  bool is_diagonal() const { return full_.size() == 0; }
  const Eigen::MatrixXd& covariance_matrix() const { return full_; }
  const Eigen::VectorXd& variances() const { return diag_; }

  // One draw with the specified covariance.
  Eigen::VectorXd draw(RngStream& rng) const;

 private:
  Eigen::Index dim_ = 0;
  bool zero_ = false;      // all-zero covariance: draws are exactly zero
  Eigen::VectorXd diag_;   // diagonal variances (always set for diagonal specs)
  Eigen::MatrixXd full_;   // empty for diagonal specs
  mutable std::optional<Eigen::MatrixXd> factor_;  // cached lower factor

  const Eigen::MatrixXd& factor() const;
};

inline Eigen::VectorXd gaussian_draw(const GaussianSpec& spec, RngStream& rng) {
  return spec.draw(rng);
}

enum class CriticalValueMethod { kClosedFormDiagonal, kMonteCarlo, kBootstrap };

// Smallest t with (estimated) P(||Z||_inf <= t) >= 1 - alpha.
struct CriticalValue {
  double alpha = 0.0;
  double value = 0.0;
  CriticalValueMethod method = CriticalValueMethod::kClosedFormDiagonal;
  std::int64_t draws = 0;      // draw count when stochastic
  bool degenerate = false;     // all-zero covariance
};

// Equal variances: c = sigma * Phi^{-1}((1 + (1-alpha)^{1/d}) / 2).
CriticalValue max_quantile_diagonal(double sigma2, std::int64_t d, double alpha);

// Unequal diagonal: solves prod_j (2 Phi(t / sigma_j) - 1) = 1 - alpha by
// bracketed root-finding to 1e-10.
CriticalValue max_quantile_diagonal(const Eigen::VectorXd& sigma2, double alpha);

// P(||Z||_inf <= t) for diagonal N(0, diag(sigma2)); the exact reference CDF
// used by the simulation harness for its P-P curves.
double max_norm_cdf_diagonal(const Eigen::VectorXd& sigma2, double t);
double max_norm_cdf_diagonal(double sigma2, std::int64_t d, double t);

// Quantile of the same law (exact for equal variances, root-found otherwise).
double max_norm_quantile_diagonal(const Eigen::VectorXd& sigma2, double p);
double max_norm_quantile_diagonal(double sigma2, std::int64_t d, double p);

// Monte Carlo critical value for an arbitrary spec.
CriticalValue max_quantile_monte_carlo(const GaussianSpec& spec, double alpha,
                                       std::int64_t draws, RngStream& rng);

}  // namespace robusthd
