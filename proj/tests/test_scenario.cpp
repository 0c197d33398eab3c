#include <cmath>
#include <filesystem>
#include <fstream>

#include <doctest.h>
#include <json.hpp>

#include "robusthd/artifacts.hpp"
#include "robusthd/gaussian.hpp"
#include "robusthd/scenario.hpp"

using namespace robusthd;
using doctest::Approx;

TEST_CASE("rejection frequency basics") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(rejection_frequency(v, 2.5) == 0.5);
  CHECK(rejection_frequency(v, std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(rejection_frequency(v, -std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(rejection_frequency(v, 4.0) == 0.0);  // strict exceedance
  CHECK_THROWS_AS(rejection_frequency({}, 0.0), ArgumentError);
}

TEST_CASE("pp curve of a sample against its own law hugs the diagonal") {
  RngStream rng(1, 0, 0);
  std::vector<double> sample(20000);
  const auto spec = GaussianSpec::diagonal(Eigen::VectorXd::Ones(5));
  for (auto& v : sample) v = spec.draw(rng).cwiseAbs().maxCoeff();
  const CdfFn ref = [](double t) { return max_norm_cdf_diagonal(1.0, 5, t); };
  const QuantileFn refq = [](double p) { return max_norm_quantile_diagonal(1.0, 5, p); };
  const auto curve = pp_curve(sample, ref, merged_quantile_grid(sample, refq, 512));
  CHECK(curve.grid.size() == 512);
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    worst = std::max(worst, std::abs(curve.cdf_reference[i] - curve.cdf_empirical[i]));
  CHECK(worst < 0.02);
  CHECK(std::is_sorted(curve.cdf_empirical.begin(), curve.cdf_empirical.end()));
  CHECK(std::is_sorted(curve.cdf_reference.begin(), curve.cdf_reference.end()));
}

TEST_CASE("pp curve of a degenerate sample is a step at the common value") {
  const std::vector<double> sample(100, 3.0);
  const CdfFn ref = [](double t) { return max_norm_cdf_diagonal(1.0, 2, t); };
  std::vector<double> grid{2.0, 2.999, 3.0, 3.001, 4.0};
  const auto curve = pp_curve(sample, ref, grid);
  CHECK(curve.cdf_empirical[0] == 0.0);
  CHECK(curve.cdf_empirical[1] == 0.0);
  CHECK(curve.cdf_empirical[2] == 1.0);
  CHECK(curve.cdf_empirical[4] == 1.0);
}

TEST_CASE("ks distance of the law against itself is small") {
  RngStream rng(2, 0, 0);
  std::vector<double> sample(100000);
  for (auto& v : sample) v = std::abs(rng.next_normal());
  const CdfFn ref = [](double t) { return max_norm_cdf_diagonal(1.0, 1, t); };
  CHECK(ks_distance(sample, ref) < 0.01);
}

TEST_CASE("comparator trimmed mean") {
  SampleMatrix m;
  m.values.resize(5, 1);
  m.values << 1, 2, 3, 5, 100;
  SUBCASE("k = 0 reduces to the scaled mean") {
    const auto s = comparator_trimmed_mean(m, 0, Eigen::VectorXd::Zero(1));
    CHECK(s.values[0] == Approx(std::sqrt(5.0) * 111.0 / 5.0).epsilon(1e-13));
  }
  SUBCASE("one per tail") {
    const auto s = comparator_trimmed_mean(m, 1, Eigen::VectorXd::Zero(1));
    CHECK(s.values[0] == Approx(7.4535599249993).epsilon(1e-12));
  }
  SUBCASE("budget exhausted") {
    CHECK_THROWS_AS(comparator_trimmed_mean(m, 3, Eigen::VectorXd::Zero(1)),
                    PreconditionError);
  }
}

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.n = 40;
  cfg.d = 6;
  cfg.distribution.kind = DistributionKind::kStudentT;
  cfg.distribution.nu = 4.01;
  cfg.replications = 30;
  cfg.bootstrap_b = 200;
  cfg.statistics = {ScenarioStatistic::kSampleMean, ScenarioStatistic::kWinsorized,
                    ScenarioStatistic::kTrimmed, ScenarioStatistic::kNormalized,
                    ScenarioStatistic::kComparatorTrim};
  cfg.comparator_trim_k = 2;
  cfg.seed = 99;
  cfg.threads = 1;
  cfg.pp_points = 64;
  return cfg;
}

}  // namespace

TEST_CASE("run_scenario is deterministic and schedule-independent") {
  auto cfg = small_config();
  cfg.threads = 1;
  const auto a = run_scenario(cfg);
  cfg.threads = 3;
  const auto b = run_scenario(cfg);
  REQUIRE(a.statistics.size() == b.statistics.size());
  for (std::size_t s = 0; s < a.statistics.size(); ++s) {
    CHECK(a.statistics[s].name == b.statistics[s].name);
    CHECK(a.statistics[s].norms == b.statistics[s].norms);  // bitwise
    CHECK(a.statistics[s].rejection_gaussian == b.statistics[s].rejection_gaussian);
    CHECK(a.statistics[s].rejection_bootstrap == b.statistics[s].rejection_bootstrap);
    CHECK(a.statistics[s].ks == b.statistics[s].ks);
  }
  CHECK(a.covariance_max_errors == b.covariance_max_errors);
}

TEST_CASE("run_scenario summary structure") {
  const auto summary = run_scenario(small_config());
  CHECK(summary.schedule_mean.valid);
  CHECK(summary.schedule_cov.valid);
  CHECK(summary.feasibility_defined);
  CHECK(summary.statistics.size() == 5);
  for (const auto& s : summary.statistics) {
    REQUIRE(s.implementable);
    CHECK(s.norms.size() == 30);
    CHECK(s.rejection_gaussian >= 0.0);
    CHECK(s.rejection_gaussian <= 1.0);
    CHECK(s.ks >= 0.0);
    CHECK(s.ks <= 1.0);
    CHECK(std::is_sorted(s.pp_gaussian.cdf_empirical.begin(), s.pp_gaussian.cdf_empirical.end()));
  }
  const auto* wins = summary.find("winsorized");
  REQUIRE(wins != nullptr);
  CHECK(wins->has_bootstrap);
  const auto* trim = summary.find("trimmed");
  REQUIRE(trim != nullptr);
  CHECK(trim->has_bootstrap);
  const auto* mean = summary.find("sample_mean");
  REQUIRE(mean != nullptr);
  CHECK_FALSE(mean->has_bootstrap);  // baseline bootstrap off by default
  // d <= 1000 tracks the covariance error by default.
  CHECK(summary.covariance_max_errors.size() == 30);
}

TEST_CASE("gaussian d=1 sample mean rejects at nominal level") {
  ScenarioConfig cfg;
  cfg.n = 50;
  cfg.d = 1;
  cfg.distribution.kind = DistributionKind::kStandardNormal;
  cfg.replications = 4000;
  cfg.bootstrap_b = 0;
  cfg.statistics = {ScenarioStatistic::kSampleMean};
  cfg.seed = 2024;
  cfg.threads = 1;
  const auto summary = run_scenario(cfg);
  const auto* mean = summary.find("sample_mean");
  REQUIRE(mean != nullptr);
  // S_n is exactly N(0,1) here; MC error only (SE ~ 0.0034).
  CHECK(mean->rejection_gaussian == Approx(0.05).epsilon(0.35));
  CHECK(mean->ks < 0.03);
}

TEST_CASE("heavy-tailed sample mean sits below the diagonal in the upper tail") {
  // d = 500 so that ceil(eps n) = 2 and the winsorization actually clips;
  // at d = 100 the schedule rounds to (1, n) and the statistics coincide.
  ScenarioConfig cfg;
  cfg.n = 200;
  cfg.d = 500;
  cfg.distribution.kind = DistributionKind::kStudentT;
  cfg.distribution.nu = 3.01;
  cfg.replications = 250;
  cfg.bootstrap_b = 0;
  cfg.statistics = {ScenarioStatistic::kSampleMean, ScenarioStatistic::kWinsorized};
  cfg.seed = 141;
  cfg.threads = 1;
  cfg.track_covariance_error = 0;
  const auto summary = run_scenario(cfg);
  const auto* mean = summary.find("sample_mean");
  const auto* wins = summary.find("winsorized");
  REQUIRE(mean != nullptr);
  REQUIRE(wins != nullptr);
  // ||S_n||_inf has a much heavier tail than ||Z||_inf: where the reference
  // CDF reaches 0.95 the empirical CDF lags well behind, and the rejection
  // gap against the winsorized mean is large.
  const auto& pp = mean->pp_gaussian;
  bool checked = false;
  for (std::size_t i = 0; i < pp.grid.size(); ++i) {
    if (pp.cdf_reference[i] >= 0.95 && pp.cdf_reference[i] <= 0.97) {
      CHECK(pp.cdf_empirical[i] < pp.cdf_reference[i] - 0.05);
      checked = true;
      break;
    }
  }
  CHECK(checked);
  CHECK(mean->rejection_gaussian > wins->rejection_gaussian + 0.1);
}

TEST_CASE("infeasible schedules surface as not-implementable statistics") {
  ScenarioConfig cfg = small_config();
  cfg.n = 10;
  cfg.d = 2;
  cfg.lambda2 = 2.0;  // eps ~ 0.6
  cfg.lambda2_prime = 2.0;
  cfg.replications = 5;
  cfg.bootstrap_b = 0;
  cfg.comparator_trim_k = 5;  // 2k = n
  const auto summary = run_scenario(cfg);
  CHECK_FALSE(summary.schedule_mean.valid);
  const auto* wins = summary.find("winsorized");
  REQUIRE(wins != nullptr);
  CHECK_FALSE(wins->implementable);
  CHECK(!wins->not_implementable_reason.empty());
  const auto* comp = summary.find("comparator_trim");
  REQUIRE(comp != nullptr);
  CHECK_FALSE(comp->implementable);
  const auto* mean = summary.find("sample_mean");
  REQUIRE(mean != nullptr);
  CHECK(mean->implementable);  // the sample mean is always computable
}

TEST_CASE("scenario artifacts land on disk and parse") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "robusthd_artifact_test";
  fs::remove_all(dir);
  auto cfg = small_config();
  cfg.replications = 10;
  cfg.bootstrap_b = 150;
  const auto summary = run_scenario(cfg);
  write_scenario_artifacts(dir.string(), summary);

  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "pp_winsorized.csv"));
  CHECK(fs::exists(dir / "pp_winsorized.svg"));
  CHECK(fs::exists(dir / "pp_winsorized_bootstrap.csv"));
  CHECK(fs::exists(dir / "pp_sample_mean.csv"));

  std::ifstream in(dir / "summary.json");
  nlohmann::json parsed;
  in >> parsed;
  CHECK(parsed["config"]["n"] == 40);
  CHECK(parsed["statistics"].is_array());
  CHECK(parsed.contains("feasibility"));
  CHECK(parsed["schedule_mean"]["valid"] == true);

  std::ifstream pp(dir / "pp_winsorized.csv");
  std::string header;
  std::getline(pp, header);
  CHECK(header == "t,cdf_reference,cdf_empirical");
  fs::remove_all(dir);
}

TEST_CASE("user mixture distribution matches its closed-form variance") {
  DistributionSpec dist;
  dist.kind = DistributionKind::kUserMixture;
  dist.mixture_weight = 0.2;
  dist.mixture_scale = 3.0;
  const double want = 0.8 + 0.2 * 9.0;
  CHECK(dist.coordinate_variance() == doctest::Approx(want).epsilon(1e-14));

  RngStream rng(55, 0, 0);
  const int n = 200000;
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = dist.draw(rng);
    sumsq += x * x;
  }
  CHECK(sumsq / n == doctest::Approx(want).epsilon(0.03));

  // And it runs through the harness with the matching diagonal reference.
  auto cfg = small_config();
  cfg.distribution = dist;
  cfg.replications = 20;
  cfg.bootstrap_b = 0;
  cfg.statistics = {ScenarioStatistic::kSampleMean};
  const auto summary = run_scenario(cfg);
  CHECK(summary.population_variance == doctest::Approx(want).epsilon(1e-14));
  CHECK(summary.find("sample_mean")->implementable);
}

TEST_CASE("normalized statistic works without any bootstrap draws") {
  auto cfg = small_config();
  cfg.bootstrap_b = 0;
  cfg.statistics = {ScenarioStatistic::kNormalized};
  const auto summary = run_scenario(cfg);
  const auto* norm = summary.find("normalized");
  REQUIRE(norm != nullptr);
  CHECK(norm->implementable);
  CHECK_FALSE(norm->has_bootstrap);
  CHECK(norm->norms.size() == 30);
  // Correlation-form reference: unit variances.
  CHECK(norm->rejection_gaussian >= 0.0);
  CHECK(norm->rejection_gaussian <= 1.0);
}

TEST_CASE("config validation") {
  ScenarioConfig cfg = small_config();
  cfg.replications = 0;
  CHECK_THROWS_AS(run_scenario(cfg), ArgumentError);
  cfg = small_config();
  cfg.bootstrap_b = 50;
  CHECK_THROWS_AS(run_scenario(cfg), ArgumentError);
  cfg = small_config();
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(run_scenario(cfg), ArgumentError);
  cfg = small_config();
  cfg.statistics.clear();
  CHECK_THROWS_AS(run_scenario(cfg), ArgumentError);
  cfg = small_config();
  cfg.distribution.nu = 2.0;
  CHECK_THROWS_AS(run_scenario(cfg), ArgumentError);
}
