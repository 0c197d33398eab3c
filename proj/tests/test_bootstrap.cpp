#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <doctest.h>

#include "robusthd/bootstrap.hpp"

using namespace robusthd;
using doctest::Approx;

TEST_CASE("multiplier draw from all-zero rows is the zero vector") {
  RngStream rng(1, 0, 0);
  const Eigen::VectorXd draw = multiplier_bootstrap_draw(Eigen::MatrixXd::Zero(8, 5), rng);
  CHECK(draw.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-row multiplier draw is xi times that row") {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(1, 4);
  v(0, 0) = 1.0;  // e_1
  RngStream rng(2, 0, 0);
  const int n = 50000;
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd draw = multiplier_bootstrap_draw(v, rng);
    CHECK(draw[1] == 0.0);
    CHECK(draw[2] == 0.0);
    CHECK(draw[3] == 0.0);
    sumsq += draw[0] * draw[0];
  }
  CHECK(sumsq / n == Approx(1.0).epsilon(0.03));  // marginal N(0,1)
}

TEST_CASE("conditional covariance of multiplier draws is V'V/n") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-2, 2);
  const Eigen::Index n = 40;
  const Eigen::Index d = 10;
  Eigen::MatrixXd v(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i, j) = u(gen);
  const Eigen::MatrixXd target = v.transpose() * v / static_cast<double>(n);

  RngStream rng(4, 0, 0);
  const int draws = 100000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < draws; ++i) {
    const Eigen::VectorXd s = multiplier_bootstrap_draw(v, rng);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(s, 1.0);
  }
  acc /= draws;
  acc.triangularView<Eigen::StrictlyUpper>() =
      acc.triangularView<Eigen::StrictlyLower>().transpose();
  CHECK((acc - target).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("batched norms match per-draw computation with the same stream") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd v(30, 7);
  for (Eigen::Index i = 0; i < 30; ++i)
    for (Eigen::Index j = 0; j < 7; ++j) v(i, j) = u(gen);

  RngStream batched(6, 1, 2);
  const auto norms = multiplier_bootstrap_norms(v, 300, batched);

  RngStream serial(6, 1, 2);
  for (int b = 0; b < 300; ++b) {
    const Eigen::VectorXd draw = multiplier_bootstrap_draw(v, serial);
    CHECK(norms[static_cast<std::size_t>(b)] ==
          Approx(draw.cwiseAbs().maxCoeff()).epsilon(1e-12));
  }
}

TEST_CASE("empirical upper quantile uses the ceil((1-alpha)B) order statistic") {
  std::vector<double> values(100);
  std::iota(values.begin(), values.end(), 1.0);
  std::shuffle(values.begin(), values.end(), std::mt19937_64(7));
  CHECK(empirical_upper_quantile(values, 0.05) == 95.0);
  CHECK(empirical_upper_quantile(values, 0.5) == 50.0);
  CHECK_THROWS_AS(empirical_upper_quantile({}, 0.05), ArgumentError);
  CHECK_THROWS_AS(empirical_upper_quantile({1.0}, 1.5), ArgumentError);
}

TEST_CASE("degenerate covariance yields a flagged zero critical value") {
  RngStream rng(8, 0, 0);
  const auto cv = bootstrap_critical_value(Eigen::MatrixXd::Zero(12, 3), 0.05, 200, rng);
  CHECK(cv.value == 0.0);
  CHECK(cv.degenerate);
}

TEST_CASE("d = 1 bootstrap critical value approaches the normal quantile") {
  // V with V'V/n = 1 exactly.
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(4, 1);
  RngStream rng(9, 0, 0);
  const auto cv = bootstrap_critical_value(v, 0.05, 200000, rng);
  CHECK(cv.value == Approx(1.959964).epsilon(0.01));
  CHECK_FALSE(cv.degenerate);
  CHECK(cv.method == CriticalValueMethod::kBootstrap);
}

TEST_CASE("bootstrap critical value rejects tiny B") {
  RngStream rng(10, 0, 0);
  CHECK_THROWS_AS(bootstrap_critical_value(Eigen::MatrixXd::Ones(4, 1), 0.05, 50, rng),
                  ArgumentError);
}

TEST_CASE("scaled norms divide coordinates before the max") {
  Eigen::MatrixXd v(2, 2);
  v << 3.0, 0.0, 0.0, 0.1;
  Eigen::VectorXd scale(2);
  scale << 3.0, 0.1;
  RngStream a(11, 0, 0);
  RngStream b(11, 0, 0);
  std::vector<double> plain;
  std::vector<double> scaled;
  multiplier_bootstrap_norms2(v, 500, a, scale, plain, scaled);
  const auto plain_only = multiplier_bootstrap_norms(v, 500, b);
  for (std::size_t i = 0; i < plain.size(); ++i) {
    CHECK(plain[i] == plain_only[i]);
    // After scaling both coordinates are standard normal / sqrt(n).
    CHECK(scaled[i] <= plain[i] / 0.1 + 1e-12);
  }
}
