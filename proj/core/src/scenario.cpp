#include "robusthd/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "robusthd/estimators.hpp"
#include "robusthd/gaussian.hpp"
#include "robusthd/parallel.hpp"

namespace robusthd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kSketchPoints = 128;

// Bootstrap critical-value families: winsorized/trimmed share the
// winsorized-covariance draws, the normalized statistic uses their
// correlation-form rescaling, the sample mean uses the empirical-covariance
// baseline.
enum Family { kFamWins = 0, kFamNorm = 1, kFamMean = 2, kFamCount = 3 };

struct StatPlan {
  ScenarioStatistic stat;
  bool implementable = true;
  std::string reason;
  int family = -1;  // bootstrap family or -1
  double reference_variance = 1.0;
};

std::vector<float> sketch_of_sorted(const std::vector<double>& sorted) {
  std::vector<float> out(kSketchPoints);
  const auto last = sorted.size() - 1;
  for (int k = 0; k < kSketchPoints; ++k) {
    const auto idx = static_cast<std::size_t>(std::llround(
        static_cast<double>(last) * static_cast<double>(k) / (kSketchPoints - 1)));
    out[static_cast<std::size_t>(k)] = static_cast<float>(sorted[idx]);
  }
  return out;
}

}  // namespace

std::string statistic_name(ScenarioStatistic s) {
  switch (s) {
    case ScenarioStatistic::kSampleMean:
      return "sample_mean";
    case ScenarioStatistic::kWinsorized:
      return "winsorized";
    case ScenarioStatistic::kTrimmed:
      return "trimmed";
    case ScenarioStatistic::kNormalized:
      return "normalized";
    case ScenarioStatistic::kComparatorTrim:
      return "comparator_trim";
  }
  return "unknown";
}

void ScenarioConfig::validate() const {
  distribution.validate();
  adversary.validate();
  if (n <= 3) throw ArgumentError("ScenarioConfig: requires n > 3");
  if (d < 1) throw ArgumentError("ScenarioConfig: requires d >= 1");
  if (replications < 1) throw ArgumentError("ScenarioConfig: requires replications >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("ScenarioConfig: alpha outside (0, 1)");
  if (bootstrap_b != 0 && bootstrap_b < 100)
    throw ArgumentError("ScenarioConfig: bootstrap_b must be 0 or >= 100");
  if (statistics.empty()) throw ArgumentError("ScenarioConfig: no statistics selected");
  if (pp_points < 2) throw ArgumentError("ScenarioConfig: pp_points must be >= 2");
  if (comparator_trim_k < 0) throw ArgumentError("ScenarioConfig: negative trim count");
  if (!(eta_bar >= 0.0 && eta_bar < 0.5))
    throw ArgumentError("ScenarioConfig: eta_bar must lie in [0, 1/2)");
}

MeanStatistic comparator_trimmed_mean(const SampleMatrix& data, std::int64_t k_trim,
                                      const Eigen::VectorXd& mu) {
  if (k_trim < 0) throw ArgumentError("comparator_trimmed_mean: negative trim count");
  if (2 * k_trim >= data.n())
    throw PreconditionError("comparator_trimmed_mean: trim budget exceeds the sample");
  EpsilonSchedule sched;
  sched.mode = ScheduleMode::kMean;
  sched.n = data.n();
  sched.d = data.d();
  sched.valid = true;
  sched.lower_index = k_trim + 1;
  sched.upper_index = data.n() - k_trim;
  return trimmed_mean(data, mu, sched);
}

const StatisticSummary* ReplicationSummary::find(const std::string& name) const {
  for (const auto& s : statistics)
    if (s.name == name) return &s;
  return nullptr;
}

ReplicationSummary run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  ReplicationSummary out;
  out.config = cfg;
  out.schedule_mean =
      epsilon_schedule(cfg.n, cfg.d, cfg.eta_bar, cfg.lambda1, cfg.lambda2, ScheduleMode::kMean);
  out.schedule_cov = epsilon_schedule(cfg.n, cfg.d, cfg.eta_bar, cfg.lambda1_prime,
                                      cfg.lambda2_prime, ScheduleMode::kCovariance);
  out.population_variance = cfg.distribution.coordinate_variance();
  out.reference_critical = max_quantile_diagonal(out.population_variance, cfg.d, cfg.alpha);

  const double eps_prime = out.schedule_cov.epsilon;
  if (eps_prime > 0.0 && eps_prime < 1.0) {
    out.feasibility = feasibility_condition(cfg.n, cfg.d, eps_prime);
    out.sharp = sharp_feasibility(cfg.n, cfg.d, eps_prime, cfg.lambda1_prime, cfg.eta_bar > 0.0);
    out.feasibility_defined = true;
  }

  // Deduplicated statistic plan with per-statistic feasibility.
  std::vector<StatPlan> plan;
  for (ScenarioStatistic s : cfg.statistics) {
    if (std::any_of(plan.begin(), plan.end(), [&](const StatPlan& p) { return p.stat == s; }))
      continue;
    StatPlan p;
    p.stat = s;
    p.reference_variance =
        s == ScenarioStatistic::kNormalized ? 1.0 : out.population_variance;
    switch (s) {
      case ScenarioStatistic::kSampleMean:
        if (cfg.bootstrap_b > 0 && cfg.sample_mean_bootstrap) p.family = kFamMean;
        break;
      case ScenarioStatistic::kWinsorized:
      case ScenarioStatistic::kTrimmed:
        if (!out.schedule_mean.valid) {
          p.implementable = false;
          p.reason = "epsilon schedule infeasible";
        } else if (cfg.bootstrap_b > 0 && out.schedule_cov.valid) {
          p.family = kFamWins;
        }
        break;
      case ScenarioStatistic::kNormalized:
        if (!out.schedule_mean.valid || !out.schedule_cov.valid) {
          p.implementable = false;
          p.reason = "epsilon schedule infeasible";
        } else if (cfg.bootstrap_b > 0) {
          p.family = kFamNorm;
        }
        break;
      case ScenarioStatistic::kComparatorTrim:
        if (2 * cfg.comparator_trim_k >= cfg.n) {
          p.implementable = false;
          p.reason = "trim budget exceeds the sample";
        }
        break;
    }
    plan.push_back(std::move(p));
  }

  auto planned = [&](ScenarioStatistic s) {
    for (const auto& p : plan)
      if (p.stat == s) return p.implementable;
    return false;
  };
  const bool want_wins = planned(ScenarioStatistic::kWinsorized);
  const bool want_trim = planned(ScenarioStatistic::kTrimmed);
  const bool want_norm = planned(ScenarioStatistic::kNormalized);
  const bool want_mean = planned(ScenarioStatistic::kSampleMean);
  const bool want_comp = planned(ScenarioStatistic::kComparatorTrim);

  const bool track_cov = cfg.track_covariance_error == 1 ||
                         (cfg.track_covariance_error < 0 && cfg.d <= 1000);
  bool family_active[kFamCount] = {false, false, false};
  for (const auto& p : plan)
    if (p.implementable && p.family >= 0) family_active[p.family] = true;

  const auto reps = cfg.replications;
  const auto n = cfg.n;
  const auto d = cfg.d;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);

  std::vector<double> norms_mean(want_mean ? reps : 0);
  std::vector<double> norms_wins(want_wins ? reps : 0);
  std::vector<double> norms_trim(want_trim ? reps : 0);
  std::vector<double> norms_norm(want_norm ? reps : 0, kNaN);
  std::vector<double> norms_comp(want_comp ? reps : 0);

  std::vector<double> cb[kFamCount];
  std::vector<float> sketch[kFamCount];
  for (int f = 0; f < kFamCount; ++f) {
    if (!family_active[f]) continue;
    cb[f].assign(static_cast<std::size_t>(reps), kNaN);
    sketch[f].assign(static_cast<std::size_t>(reps) * kSketchPoints, 0.0f);
  }
  std::vector<double> cov_errors(track_cov && out.schedule_cov.valid ? reps : 0);

  const bool cov_path = out.schedule_cov.valid &&
                        (family_active[kFamWins] || family_active[kFamNorm] || want_norm ||
                         !cov_errors.empty());

  auto run_rep = [&](std::int64_t r) {
    RngStream data_rng(cfg.seed, static_cast<std::uint64_t>(r), stream_block::kData);
    SampleMatrix x = cfg.distribution.sample(n, d, data_rng);
    if (cfg.adversary.kind != AdversaryKind::kNone && cfg.eta_bar > 0.0) {
      AdversarySpec adv = cfg.adversary;
      adv.eta_bar = cfg.eta_bar;
      RngStream adv_rng(cfg.seed, static_cast<std::uint64_t>(r), stream_block::kAdversary);
      x = apply_adversary(x, adv, adv_rng).data;
    }

    if (want_mean)
      norms_mean[r] = x.values.colwise().sum().cwiseAbs().maxCoeff() / sqrt_n;

    double wins_norm = 0.0;
    Eigen::VectorXd wins_values;
    if (want_wins || want_trim || want_norm) {
      const WinsorizedColumns cols = winsorize_columns(x, out.schedule_mean);
      if (want_wins || want_norm) {
        wins_values = cols.sums / sqrt_n;
        wins_norm = wins_values.cwiseAbs().maxCoeff();
        if (want_wins) norms_wins[r] = wins_norm;
      }
      if (want_trim) {
        const double size = static_cast<double>(out.schedule_mean.trim_count());
        norms_trim[r] = sqrt_n / size * cols.trim_sums.cwiseAbs().maxCoeff();
      }
    }
    if (want_comp)
      norms_comp[r] = comparator_trimmed_mean(x, cfg.comparator_trim_k, mu).sup_norm();

    if (cov_path) {
      const WinsorizedRows rows = winsorized_rows(x, out.schedule_cov);
      const Eigen::VectorXd sigma_tilde = rows.diag_sd();
      const bool scale_ok = (sigma_tilde.array() > 0.0).all();

      if (want_norm && scale_ok)
        norms_norm[r] = (wins_values.cwiseQuotient(sigma_tilde)).cwiseAbs().maxCoeff();

      if (!cov_errors.empty()) {
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
        sigma.selfadjointView<Eigen::Lower>().rankUpdate(rows.v.transpose(),
                                                         1.0 / static_cast<double>(n));
        sigma.triangularView<Eigen::StrictlyUpper>() =
            sigma.triangularView<Eigen::StrictlyLower>().transpose();
        sigma.diagonal().array() -= out.population_variance;
        cov_errors[r] = sigma.cwiseAbs().maxCoeff();
      }

      if (family_active[kFamWins] || (family_active[kFamNorm] && scale_ok)) {
        RngStream boot_rng(cfg.seed, static_cast<std::uint64_t>(r), stream_block::kBootstrap);
        std::vector<double> plain;
        std::vector<double> scaled;
        const bool with_scale = family_active[kFamNorm] && scale_ok;
        multiplier_bootstrap_norms2(rows.v, cfg.bootstrap_b, boot_rng,
                                    with_scale ? sigma_tilde : Eigen::VectorXd(), plain, scaled);
        if (family_active[kFamWins]) {
          std::vector<double> sorted = plain;
          std::sort(sorted.begin(), sorted.end());
          const auto k = static_cast<std::size_t>(
              std::ceil((1.0 - cfg.alpha) * static_cast<double>(cfg.bootstrap_b)));
          cb[kFamWins][r] = sorted[std::max<std::size_t>(k, 1) - 1];
          const auto sk = sketch_of_sorted(sorted);
          std::copy(sk.begin(), sk.end(),
                    sketch[kFamWins].begin() + static_cast<std::ptrdiff_t>(r) * kSketchPoints);
        }
        if (with_scale) {
          std::vector<double> sorted = scaled;
          std::sort(sorted.begin(), sorted.end());
          const auto k = static_cast<std::size_t>(
              std::ceil((1.0 - cfg.alpha) * static_cast<double>(cfg.bootstrap_b)));
          cb[kFamNorm][r] = sorted[std::max<std::size_t>(k, 1) - 1];
          const auto sk = sketch_of_sorted(sorted);
          std::copy(sk.begin(), sk.end(),
                    sketch[kFamNorm].begin() + static_cast<std::ptrdiff_t>(r) * kSketchPoints);
        }
      }
    }

    if (family_active[kFamMean]) {
      RngStream boot_rng(cfg.seed, static_cast<std::uint64_t>(r),
                         stream_block::kBootstrap + 10);
      Eigen::MatrixXd centered = x.values.rowwise() - x.values.colwise().mean();
      std::vector<double> plain;
      std::vector<double> scaled;
      multiplier_bootstrap_norms2(centered, cfg.bootstrap_b, boot_rng, Eigen::VectorXd(), plain,
                                  scaled);
      std::sort(plain.begin(), plain.end());
      const auto k = static_cast<std::size_t>(
          std::ceil((1.0 - cfg.alpha) * static_cast<double>(cfg.bootstrap_b)));
      cb[kFamMean][r] = plain[std::max<std::size_t>(k, 1) - 1];
      const auto sk = sketch_of_sorted(plain);
      std::copy(sk.begin(), sk.end(),
                sketch[kFamMean].begin() + static_cast<std::ptrdiff_t>(r) * kSketchPoints);
    }
  };

  int threads = cfg.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  out.threads_used = static_cast<int>(std::min<std::int64_t>(threads, reps));
  parallel_for(reps, threads, run_rep);

  // Single-threaded aggregation over ordered slots.
  auto norms_of = [&](ScenarioStatistic s) -> const std::vector<double>& {
    switch (s) {
      case ScenarioStatistic::kSampleMean:
        return norms_mean;
      case ScenarioStatistic::kWinsorized:
        return norms_wins;
      case ScenarioStatistic::kTrimmed:
        return norms_trim;
      case ScenarioStatistic::kNormalized:
        return norms_norm;
      case ScenarioStatistic::kComparatorTrim:
        return norms_comp;
    }
    return norms_mean;
  };

  for (auto& p : plan) {
    StatisticSummary s;
    s.name = statistic_name(p.stat);
    s.implementable = p.implementable;
    s.not_implementable_reason = p.reason;
    if (p.implementable) {
      s.norms = norms_of(p.stat);
      if (std::any_of(s.norms.begin(), s.norms.end(), [](double v) { return std::isnan(v); })) {
        s.implementable = false;
        s.not_implementable_reason = "degenerate scale estimate in some replication";
        out.statistics.push_back(std::move(s));
        continue;
      }
      const double sigma2 = p.reference_variance;
      const auto dd = cfg.d;
      const CdfFn ref_cdf = [sigma2, dd](double t) {
        return max_norm_cdf_diagonal(sigma2, dd, t);
      };
      const QuantileFn ref_q = [sigma2, dd](double q) {
        return max_norm_quantile_diagonal(sigma2, dd, q);
      };
      s.critical_gaussian = p.stat == ScenarioStatistic::kNormalized
                                ? max_quantile_diagonal(1.0, cfg.d, cfg.alpha).value
                                : out.reference_critical.value;
      s.rejection_gaussian = rejection_frequency(s.norms, s.critical_gaussian);
      s.ks = ks_distance(s.norms, ref_cdf);
      s.pp_gaussian =
          pp_curve(s.norms, ref_cdf, merged_quantile_grid(s.norms, ref_q, cfg.pp_points));

      if (p.family >= 0 && family_active[p.family]) {
        const auto& crit = cb[p.family];
        std::int64_t hits = 0;
        std::int64_t defined = 0;
        for (std::int64_t r = 0; r < reps; ++r) {
          if (std::isnan(crit[r])) continue;
          ++defined;
          hits += s.norms[static_cast<std::size_t>(r)] > crit[r] ? 1 : 0;
        }
        if (defined == reps) {
          s.has_bootstrap = true;
          s.rejection_bootstrap =
              static_cast<double>(hits) / static_cast<double>(defined);
          // Pooled conditional law over all replications.
          std::vector<double> pooled(sketch[p.family].begin(), sketch[p.family].end());
          std::sort(pooled.begin(), pooled.end());
          const auto pn = static_cast<double>(pooled.size());
          const CdfFn boot_cdf = [&pooled, pn](double t) {
            const auto c = std::upper_bound(pooled.begin(), pooled.end(), t) - pooled.begin();
            return static_cast<double>(c) / pn;
          };
          const QuantileFn boot_q = [&pooled, pn](double q) {
            auto k = static_cast<std::size_t>(std::ceil(q * pn));
            k = std::min(std::max<std::size_t>(k, 1), pooled.size());
            return pooled[k - 1];
          };
          s.pp_bootstrap =
              pp_curve(s.norms, boot_cdf, merged_quantile_grid(s.norms, boot_q, cfg.pp_points));
        }
      }
    }
    out.statistics.push_back(std::move(s));
  }

  out.covariance_max_errors = std::move(cov_errors);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                         .count();
  return out;
}

}  // namespace robusthd
