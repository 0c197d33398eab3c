#include "robusthd/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "robusthd/errors.hpp"

namespace robusthd {

namespace {
// Draws per GEMM batch; bounds the d x batch product buffer.
constexpr std::int64_t kBatch = 128;
}  // namespace

Eigen::VectorXd multiplier_bootstrap_draw(const Eigen::MatrixXd& v, RngStream& rng) {
  if (!v.allFinite()) throw ArgumentError("multiplier_bootstrap_draw: non-finite V");
  const Eigen::Index n = v.rows();
  Eigen::VectorXd xi(n);
  for (Eigen::Index i = 0; i < n; ++i) xi[i] = rng.next_normal();
  return v.transpose() * xi / std::sqrt(static_cast<double>(n));
}

void multiplier_bootstrap_norms2(const Eigen::MatrixXd& v, std::int64_t draws, RngStream& rng,
                                 const Eigen::VectorXd& scale, std::vector<double>& plain,
                                 std::vector<double>& scaled) {
  if (!v.allFinite()) throw ArgumentError("multiplier_bootstrap_norms: non-finite V");
  if (draws < 1) throw ArgumentError("multiplier_bootstrap_norms: draws must be >= 1");
  const bool with_scale = scale.size() > 0;
  if (with_scale && scale.size() != v.cols())
    throw ArgumentError("multiplier_bootstrap_norms: scale has wrong dimension");

  const Eigen::Index n = v.rows();
  const Eigen::Index d = v.cols();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  plain.assign(static_cast<std::size_t>(draws), 0.0);
  if (with_scale) scaled.assign(static_cast<std::size_t>(draws), 0.0);

  Eigen::MatrixXd xi(n, kBatch);
  Eigen::MatrixXd prod(d, kBatch);
  for (std::int64_t start = 0; start < draws; start += kBatch) {
    const auto batch = static_cast<Eigen::Index>(std::min<std::int64_t>(kBatch, draws - start));
    for (Eigen::Index c = 0; c < batch; ++c)
      for (Eigen::Index i = 0; i < n; ++i) xi(i, c) = rng.next_normal();
    prod.leftCols(batch).noalias() = v.transpose() * xi.leftCols(batch);
    for (Eigen::Index c = 0; c < batch; ++c) {
      const auto col = prod.col(c);
      plain[static_cast<std::size_t>(start + c)] = col.cwiseAbs().maxCoeff() * inv_sqrt_n;
      if (with_scale)
        scaled[static_cast<std::size_t>(start + c)] =
            (col.cwiseQuotient(scale)).cwiseAbs().maxCoeff() * inv_sqrt_n;
    }
  }
}

std::vector<double> multiplier_bootstrap_norms(const Eigen::MatrixXd& v, std::int64_t draws,
                                               RngStream& rng, const Eigen::VectorXd* scale) {
  std::vector<double> plain;
  std::vector<double> scaled;
  if (scale) {
    if ((scale->array() <= 0.0).any())
      throw DegenerateScaleError("multiplier_bootstrap_norms: nonpositive scale");
    multiplier_bootstrap_norms2(v, draws, rng, *scale, plain, scaled);
    return scaled;
  }
  multiplier_bootstrap_norms2(v, draws, rng, Eigen::VectorXd(), plain, scaled);
  return plain;
}

double empirical_upper_quantile(std::vector<double> values, double alpha) {
  if (values.empty()) throw ArgumentError("empirical_upper_quantile: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ArgumentError("empirical_upper_quantile: alpha outside (0, 1)");
  const auto b = static_cast<double>(values.size());
  auto k = static_cast<std::size_t>(std::ceil((1.0 - alpha) * b));
  k = std::min(std::max<std::size_t>(k, 1), values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   values.end());
  return values[k - 1];
}

CriticalValue bootstrap_critical_value(const Eigen::MatrixXd& v, double alpha, std::int64_t b,
                                       RngStream& rng) {
  if (b < 100) throw ArgumentError("bootstrap_critical_value: needs B >= 100");
  CriticalValue cv;
  cv.alpha = alpha;
  cv.method = CriticalValueMethod::kBootstrap;
  cv.draws = b;
  if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0) {
    cv.value = 0.0;
    cv.degenerate = true;
    return cv;
  }
  cv.value = empirical_upper_quantile(multiplier_bootstrap_norms(v, b, rng), alpha);
  return cv;
}

}  // namespace robusthd
