#include "robusthd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "robusthd/errors.hpp"
#include "robusthd/normal.hpp"

namespace robusthd {

namespace {
constexpr double kSymTol = 1e-8;
}

GaussianSpec GaussianSpec::diagonal(Eigen::VectorXd variances) {
  if (variances.size() < 1) throw ArgumentError("GaussianSpec: empty variance vector");
  if ((variances.array() < 0.0).any())
    throw ArgumentError("GaussianSpec: negative variance");
  GaussianSpec s;
  s.dim_ = variances.size();
  s.diag_ = std::move(variances);
  return s;
}

GaussianSpec GaussianSpec::full(Eigen::MatrixXd covariance) {
  if (covariance.rows() < 1 || covariance.rows() != covariance.cols())
    throw ArgumentError("GaussianSpec: covariance must be square");
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > kSymTol * scale)
    throw ArgumentError("GaussianSpec: covariance not symmetric");
  GaussianSpec s;
  s.dim_ = covariance.rows();
  s.diag_ = covariance.diagonal();
  s.zero_ = covariance.cwiseAbs().maxCoeff() == 0.0;
  s.full_ = std::move(covariance);
  return s;
}

const Eigen::MatrixXd& GaussianSpec::factor() const {
  if (factor_) return *factor_;
  Eigen::LLT<Eigen::MatrixXd> llt(full_);
  if (llt.info() == Eigen::Success) {
    factor_ = Eigen::MatrixXd(llt.matrixL());
    return *factor_;
  }
  // One retry with a small diagonal jitter, then fail.
  const double jitter = 1e-10 * full_.trace() / static_cast<double>(dim_);
  Eigen::MatrixXd bumped = full_;
  bumped.diagonal().array() += jitter;
  Eigen::LLT<Eigen::MatrixXd> retry(bumped);
  if (retry.info() != Eigen::Success)
    throw NumericError("GaussianSpec: covariance factorization failed beyond jitter tolerance");
  factor_ = Eigen::MatrixXd(retry.matrixL());
  return *factor_;
}

Eigen::VectorXd GaussianSpec::draw(RngStream& rng) const {
  Eigen::VectorXd z(dim_);
  for (Eigen::Index j = 0; j < dim_; ++j) z[j] = rng.next_normal();
  if (is_diagonal()) return diag_.cwiseSqrt().cwiseProduct(z);
  if (zero_) return Eigen::VectorXd::Zero(dim_);
  return factor() * z;
}

double max_norm_cdf_diagonal(const Eigen::VectorXd& sigma2, double t) {
  if (t <= 0.0) return 0.0;
  double log_cdf = 0.0;
  for (Eigen::Index j = 0; j < sigma2.size(); ++j) {
    const double sd = std::sqrt(sigma2[j]);
    if (sd == 0.0) continue;  // a zero coordinate never exceeds t > 0
    const double m = 2.0 * normal_cdf(t / sd) - 1.0;
    if (m <= 0.0) return 0.0;
    log_cdf += std::log(m);
  }
  return std::exp(log_cdf);
}

double max_norm_cdf_diagonal(double sigma2, std::int64_t d, double t) {
  if (t <= 0.0) return 0.0;
  if (sigma2 == 0.0) return 1.0;
  const double m = 2.0 * normal_cdf(t / std::sqrt(sigma2)) - 1.0;
  if (m <= 0.0) return 0.0;
  return std::exp(static_cast<double>(d) * std::log(m));
}

double max_norm_quantile_diagonal(double sigma2, std::int64_t d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("max_norm_quantile: p outside (0, 1)");
  if (d < 1) throw ArgumentError("max_norm_quantile: d must be >= 1");
  if (sigma2 == 0.0) return 0.0;
  const double root = std::exp(std::log(p) / static_cast<double>(d));
  return std::sqrt(sigma2) * inverse_normal_cdf(0.5 * (1.0 + root));
}

double max_norm_quantile_diagonal(const Eigen::VectorXd& sigma2, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("max_norm_quantile: p outside (0, 1)");
  if (sigma2.size() < 1) throw ArgumentError("max_norm_quantile: empty variance vector");
  const double max_s2 = sigma2.maxCoeff();
  if (max_s2 == 0.0) return 0.0;
  // Bracket: the equal-variance quantile at max variance over d coordinates
  // bounds from above; zero from below. Bisection to 1e-10.
  double hi = max_norm_quantile_diagonal(max_s2, sigma2.size(), p) + 1.0;
  double lo = 0.0;
  while (max_norm_cdf_diagonal(sigma2, hi) < p) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-10 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (max_norm_cdf_diagonal(sigma2, mid) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

CriticalValue max_quantile_diagonal(double sigma2, std::int64_t d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ArgumentError("max_quantile_diagonal: alpha outside (0, 1)");
  if (!(sigma2 > 0.0)) throw ArgumentError("max_quantile_diagonal: sigma2 must be positive");
  CriticalValue cv;
  cv.alpha = alpha;
  cv.method = CriticalValueMethod::kClosedFormDiagonal;
  cv.value = max_norm_quantile_diagonal(sigma2, d, 1.0 - alpha);
  return cv;
}

CriticalValue max_quantile_diagonal(const Eigen::VectorXd& sigma2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ArgumentError("max_quantile_diagonal: alpha outside (0, 1)");
  if ((sigma2.array() <= 0.0).any())
    throw ArgumentError("max_quantile_diagonal: variances must be positive");
  CriticalValue cv;
  cv.alpha = alpha;
  cv.method = CriticalValueMethod::kClosedFormDiagonal;
  cv.value = max_norm_quantile_diagonal(sigma2, 1.0 - alpha);
  return cv;
}

CriticalValue max_quantile_monte_carlo(const GaussianSpec& spec, double alpha,
                                       std::int64_t draws, RngStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ArgumentError("max_quantile_monte_carlo: alpha outside (0, 1)");
  if (draws < 1) throw ArgumentError("max_quantile_monte_carlo: draws must be >= 1");
  std::vector<double> norms(static_cast<std::size_t>(draws));
  for (auto& v : norms) v = spec.draw(rng).cwiseAbs().maxCoeff();
  const auto k = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(draws)));
  const auto idx = std::max<std::size_t>(1, k) - 1;
  std::nth_element(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(idx), norms.end());
  CriticalValue cv;
  cv.alpha = alpha;
  cv.method = CriticalValueMethod::kMonteCarlo;
  cv.draws = draws;
  cv.value = norms[idx];
  return cv;
}

}  // namespace robusthd
