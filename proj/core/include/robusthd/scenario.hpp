#pragma once

#include <string>
#include <vector>

#include "robusthd/bootstrap.hpp"
#include "robusthd/contamination.hpp"
#include "robusthd/covariance.hpp"
#include "robusthd/distributions.hpp"
#include "robusthd/pp.hpp"
#include "robusthd/theory.hpp"

namespace robusthd {

enum class ScenarioStatistic {
  kSampleMean,
  kWinsorized,
  kTrimmed,
  kNormalized,
  kComparatorTrim,
};

std::string statistic_name(ScenarioStatistic s);

// Full experiment description. Replications are embarrassingly parallel;
// all randomness is keyed by (seed, replication, block), so results do not
// depend on the thread count.
struct ScenarioConfig {
  std::int64_t n = 200;
  std::int64_t d = 500;
  DistributionSpec distribution;
  double eta_bar = 0.0;
  double lambda1 = 1.05;
  double lambda2 = 0.1;
  double lambda1_prime = 1.05;
  double lambda2_prime = 0.07;
  AdversarySpec adversary;
  std::int64_t replications = 1000;
  std::int64_t bootstrap_b = 1000;  // 0 disables the bootstrap
  double alpha = 0.05;
  std::vector<ScenarioStatistic> statistics = {ScenarioStatistic::kSampleMean,
                                               ScenarioStatistic::kWinsorized};
  std::int64_t comparator_trim_k = 0;
  bool sample_mean_bootstrap = false;  // empirical-covariance baseline bootstrap
  std::uint64_t seed = 20250409;
  int threads = 0;   // 0 = hardware concurrency
  int pp_points = 512;
  // -1: track entrywise covariance error automatically (d <= 1000);
  //  0: never; 1: always.
  int track_covariance_error = -1;

  void validate() const;
};

struct StatisticSummary {
  std::string name;
  bool implementable = true;
  std::string not_implementable_reason;
  std::vector<double> norms;  // ||T||_inf per replication
  double critical_gaussian = 0.0;  // the reference quantile this statistic was tested at
  double rejection_gaussian = 0.0;
  double ks = 0.0;
  PPCurve pp_gaussian;
  bool has_bootstrap = false;
  double rejection_bootstrap = 0.0;  // at the per-replication c^B
  PPCurve pp_bootstrap;              // against the pooled conditional law
};

struct ReplicationSummary {
  ScenarioConfig config;
  EpsilonSchedule schedule_mean;
  EpsilonSchedule schedule_cov;
  FeasibilityReport feasibility;        // simple condition at eps'
  FeasibilityReport sharp;              // Lambert form
  bool feasibility_defined = false;     // eps' inside (0, 1)
  CriticalValue reference_critical;     // closed-form diagonal c_{1-alpha}
  double population_variance = 0.0;
  std::vector<StatisticSummary> statistics;
  std::vector<double> covariance_max_errors;  // per replication; empty if untracked
  double wall_seconds = 0.0;
  int threads_used = 1;

  const StatisticSummary* find(const std::string& name) const;
};

ReplicationSummary run_scenario(const ScenarioConfig& cfg);

// Symmetric k-per-tail trimmed mean scaled by sqrt(n); generic comparator
// for externally specified trim counts. Requires 2k < n.
MeanStatistic comparator_trimmed_mean(const SampleMatrix& data, std::int64_t k_trim,
                                      const Eigen::VectorXd& mu);

}  // namespace robusthd
