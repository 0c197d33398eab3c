// robust_hd: quantile-winsorized mean / covariance estimation and the
// Monte Carlo simulation harness around them.
//
// Subcommands: estimate, cov, bootstrap, simulate, diagnose.
// Errors are reported as one-line JSON on stderr; exit codes:
//   0 success, 2 argument error, 3 data error, 4 infeasible epsilon under
//   --require-valid-epsilon.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "config_file.hpp"
#include "robusthd/artifacts.hpp"
#include "robusthd/csv.hpp"
#include "robusthd/estimators.hpp"
#include "robusthd/scenario.hpp"

namespace {

using nlohmann::json;
using namespace robusthd;

constexpr int kExitOk = 0;
constexpr int kExitArgument = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;

struct InfeasibleEpsilon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit_error(const std::string& type, const std::string& message) {
  std::cerr << json{{"error", message}, {"type", type}}.dump() << "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ROBUST_HD_SEED")) {
    try {
      return static_cast<std::uint64_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw ArgumentError("ROBUST_HD_SEED is not an integer");
    }
  }
  return 20250409;
}

json schedule_json(const EpsilonSchedule& s) {
  return json{{"epsilon", s.epsilon},
              {"lower_index", s.lower_index},
              {"upper_index", s.upper_index},
              {"valid", s.valid},
              {"mode", s.mode == ScheduleMode::kMean ? "mean" : "covariance"}};
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

struct CommonEstimationFlags {
  std::string input;
  bool header = false;
  double eta_bar = 0.0;
  double lambda1 = 1.05;
  double lambda2 = 0.1;
  double lambda1_prime = 1.05;
  double lambda2_prime = 0.07;
  bool require_valid = false;

  void attach(CLI::App* app, bool with_mean_lambdas = true) {
    app->add_option("--input", input, "CSV of n x d data, rows = observations")->required();
    app->add_flag("--header", header, "skip one header line");
    app->add_option("--eta-bar", eta_bar, "contamination budget in [0, 1/2)");
    if (with_mean_lambdas) {
      app->add_option("--lambda1", lambda1, "mean-mode lambda1 (> 1)");
      app->add_option("--lambda2", lambda2, "mean-mode lambda2 (> 0)");
    }
    app->add_option("--lambda1p", lambda1_prime, "covariance-mode lambda1 (> 1)");
    app->add_option("--lambda2p", lambda2_prime, "covariance-mode lambda2 (> 0)");
    app->add_flag("--require-valid-epsilon", require_valid,
                  "exit 4 when the schedule is infeasible");
  }

  EpsilonSchedule mean_schedule(const SampleMatrix& m) const {
    return epsilon_schedule(m.n(), m.d(), eta_bar, lambda1, lambda2, ScheduleMode::kMean);
  }
  EpsilonSchedule cov_schedule(const SampleMatrix& m) const {
    return epsilon_schedule(m.n(), m.d(), eta_bar, lambda1_prime, lambda2_prime,
                            ScheduleMode::kCovariance);
  }

  void check_valid(const EpsilonSchedule& s) const {
    if (!s.valid && require_valid)
      throw InfeasibleEpsilon("epsilon schedule infeasible: eps = " + std::to_string(s.epsilon));
  }
};

void write_output(const std::optional<std::string>& path, const json& payload) {
  if (path) {
    std::ofstream out(*path);
    if (!out) throw DataError("cannot write " + *path);
    out << payload.dump(2) << "\n";
  } else {
    std::cout << payload.dump(2) << "\n";
  }
}

int cmd_estimate(const CommonEstimationFlags& flags, const std::string& statistic, double mu,
                 const std::optional<std::string>& output) {
  const SampleMatrix data = read_csv_matrix(flags.input, flags.header);
  const Eigen::VectorXd mu_vec = Eigen::VectorXd::Constant(data.d(), mu);
  const auto sched = flags.mean_schedule(data);
  const auto sched_cov = flags.cov_schedule(data);

  json out{{"statistic", statistic},
           {"n", data.n()},
           {"d", data.d()},
           {"mu", mu},
           {"schedule", schedule_json(statistic == "location" ? sched_cov : sched)}};

  if (statistic == "location") {
    flags.check_valid(sched_cov);
    if (!sched_cov.valid) {
      out["implementable"] = false;
    } else {
      out["values"] = vector_json(winsorized_location(data, sched_cov).values);
      out["implementable"] = true;
    }
  } else {
    flags.check_valid(sched);
    if (!sched.valid) {
      out["implementable"] = false;
    } else if (statistic == "winsorized") {
      out["values"] = vector_json(winsorized_mean(data, mu_vec, sched).values);
      out["implementable"] = true;
    } else if (statistic == "trimmed") {
      out["values"] = vector_json(trimmed_mean(data, mu_vec, sched).values);
      out["implementable"] = true;
    } else if (statistic == "normalized") {
      flags.check_valid(sched_cov);
      if (!sched_cov.valid) {
        out["implementable"] = false;
        out["schedule_covariance"] = schedule_json(sched_cov);
      } else {
        const auto rows = winsorized_rows(data, sched_cov);
        const Eigen::VectorXd sigma = rows.diag_sd();
        out["values"] =
            vector_json(normalized_winsorized_mean(data, mu_vec, sched, sigma).values);
        out["sigma_tilde"] = vector_json(sigma);
        out["implementable"] = true;
      }
    } else {
      throw ArgumentError("unknown statistic '" + statistic + "'");
    }
  }
  write_output(output, out);
  return kExitOk;
}

int cmd_cov(const CommonEstimationFlags& flags, const std::string& output_dir) {
  const SampleMatrix data = read_csv_matrix(flags.input, flags.header);
  const auto sched = flags.cov_schedule(data);
  flags.check_valid(sched);

  json out{{"n", data.n()}, {"d", data.d()}, {"schedule", schedule_json(sched)}};
  if (!sched.valid) {
    out["implementable"] = false;
  } else {
    const auto cov = winsorized_covariance(data, sched);
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    const auto csv_path = (fs::path(output_dir) / "sigma_tilde.csv").string();
    write_covariance_csv(csv_path, cov.matrix);
    out["implementable"] = true;
    out["sigma_tilde_csv"] = csv_path;
    out["diag_sd"] = vector_json(cov.diag_sd);
    if (sched.epsilon > 0.0 && sched.epsilon < 1.0) {
      const auto feas = feasibility_condition(data.n(), data.d(), sched.epsilon);
      out["feasibility"] = {{"lhs", feas.lhs_value}, {"satisfied", feas.satisfied}};
    }
  }
  write_output(std::nullopt, out);
  return kExitOk;
}

int cmd_bootstrap(const CommonEstimationFlags& flags, double alpha, std::int64_t b,
                  std::uint64_t seed, const std::optional<std::string>& output) {
  const SampleMatrix data = read_csv_matrix(flags.input, flags.header);
  const auto sched = flags.cov_schedule(data);
  flags.check_valid(sched);

  json out{{"n", data.n()},
           {"d", data.d()},
           {"alpha", alpha},
           {"B", b},
           {"seed", seed},
           {"schedule", schedule_json(sched)}};
  if (!sched.valid) {
    out["implementable"] = false;
  } else {
    const auto rows = winsorized_rows(data, sched);
    RngStream rng(seed, 0, stream_block::kBootstrap);
    const auto cv = bootstrap_critical_value(rows.v, alpha, b, rng);
    out["implementable"] = true;
    out["critical_value"] = cv.value;
    out["degenerate"] = cv.degenerate;
  }
  write_output(output, out);
  return kExitOk;
}

int cmd_diagnose(std::int64_t n, std::int64_t d, double eta_bar, double lambda1, double lambda2,
                 double lambda1p, double lambda2p, double m, double constant_c,
                 const std::optional<std::string>& output) {
  const auto sched_mean = epsilon_schedule(n, d, eta_bar, lambda1, lambda2, ScheduleMode::kMean);
  const auto sched_cov =
      epsilon_schedule(n, d, eta_bar, lambda1p, lambda2p, ScheduleMode::kCovariance);

  json out{{"n", n},
           {"d", d},
           {"eta_bar", eta_bar},
           {"schedule_mean", schedule_json(sched_mean)},
           {"schedule_covariance", schedule_json(sched_cov)}};

  if (sched_cov.epsilon > 0.0 && sched_cov.epsilon < 1.0) {
    const auto feas = feasibility_condition(n, d, sched_cov.epsilon);
    out["feasibility"] = {{"lhs", feas.lhs_value},
                          {"satisfied", feas.satisfied},
                          {"components",
                           {feas.component_eps, feas.component_log, feas.component_root}}};
    const auto sharp = sharp_feasibility(n, d, sched_cov.epsilon, lambda1p, eta_bar > 0.0);
    out["sharp_feasibility"] = {{"lhs", sharp.lhs_value}, {"satisfied", sharp.satisfied}};
  }
  if (sched_mean.epsilon > 0.0 && sched_mean.epsilon < 1.0) {
    const auto c =
        c_constants(n, d, sched_mean.epsilon, lambda1, eta_bar > 0.0, LogArg::kDn);
    out["c_constants_mean"] = {{"c1", c.c1}, {"c2", c.c2}, {"r", c.r}};
  }
  if (sched_cov.epsilon > 0.0 && sched_cov.epsilon < 1.0) {
    const auto c =
        c_constants(n, d, sched_cov.epsilon, lambda1p, eta_bar > 0.0, LogArg::kD2n);
    out["c_constants_covariance"] = {{"c1", c.c1}, {"c2", c.c2}, {"r", c.r}};
  }
  if (d >= 2) {
    json rates;
    const struct {
      const char* name;
      RateKind kind;
    } kinds[] = {{"gauss_winsorized", RateKind::kGaussWinsorized},
                 {"normalized", RateKind::kNormalized},
                 {"trimmed", RateKind::kTrimmed},
                 {"covariance_rate", RateKind::kCovarianceRate},
                 {"bootstrap", RateKind::kBootstrap}};
    for (const auto& k : kinds)
      rates[k.name] = rate_bound(k.kind, n, d, m, eta_bar, constant_c).value;
    rates["m"] = m;
    rates["constant_C"] = constant_c;
    out["rate_bounds"] = rates;
  }
  write_output(output, out);
  return kExitOk;
}

int cmd_simulate(const std::optional<std::string>& config_path, ScenarioConfig overrides,
                 const std::vector<std::string>& given, const std::string& output_dir,
                 bool full, bool no_svg) {
  ScenarioConfig cfg;
  if (config_path) cfg = cli::load_scenario_config(*config_path);

  auto was_given = [&](const std::string& name) {
    return std::find(given.begin(), given.end(), name) != given.end();
  };
  if (was_given("--n")) cfg.n = overrides.n;
  if (was_given("--d")) cfg.d = overrides.d;
  if (was_given("--nu")) cfg.distribution.nu = overrides.distribution.nu;
  if (was_given("--distribution")) cfg.distribution.kind = overrides.distribution.kind;
  if (was_given("--eta-bar")) {
    cfg.eta_bar = overrides.eta_bar;
    cfg.adversary.eta_bar = overrides.eta_bar;
  }
  if (was_given("--lambda1")) cfg.lambda1 = overrides.lambda1;
  if (was_given("--lambda2")) cfg.lambda2 = overrides.lambda2;
  if (was_given("--lambda1p")) cfg.lambda1_prime = overrides.lambda1_prime;
  if (was_given("--lambda2p")) cfg.lambda2_prime = overrides.lambda2_prime;
  if (was_given("--replications")) cfg.replications = overrides.replications;
  if (was_given("--bootstrap-B")) cfg.bootstrap_b = overrides.bootstrap_b;
  if (was_given("--alpha")) cfg.alpha = overrides.alpha;
  if (was_given("--statistics")) cfg.statistics = overrides.statistics;
  if (was_given("--comparator-k")) cfg.comparator_trim_k = overrides.comparator_trim_k;
  if (was_given("--seed")) cfg.seed = overrides.seed;
  if (was_given("--threads")) cfg.threads = overrides.threads;
  if (was_given("--adversary")) cfg.adversary.kind = overrides.adversary.kind;
  if (was_given("--magnitude")) cfg.adversary.magnitude = overrides.adversary.magnitude;
  if (full) cfg.replications = 10000;
  cfg.adversary.eta_bar = cfg.eta_bar;

  const auto summary = run_scenario(cfg);
  write_scenario_artifacts(output_dir, summary, !no_svg);
  std::cout << summary_to_json(summary) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantile-winsorized robust means, bootstrap, and simulation harness"};
  app.require_subcommand(1);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "compute a robust mean statistic from CSV");
  CommonEstimationFlags est_flags;
  est_flags.attach(estimate);
  std::string est_statistic = "winsorized";
  double est_mu = 0.0;
  std::optional<std::string> est_output;
  estimate->add_option("--statistic", est_statistic,
                       "winsorized | trimmed | normalized | location");
  estimate->add_option("--mu", est_mu, "centering value applied to every coordinate");
  estimate->add_option("--output", est_output, "write JSON here instead of stdout");

  // cov
  auto* cov = app.add_subcommand("cov", "winsorized covariance; exports sigma_tilde.csv");
  CommonEstimationFlags cov_flags;
  cov_flags.attach(cov, /*with_mean_lambdas=*/false);
  std::string cov_output_dir = ".";
  cov->add_option("--output-dir", cov_output_dir, "directory for sigma_tilde.csv");

  // bootstrap
  auto* boot = app.add_subcommand("bootstrap", "multiplier-bootstrap critical value from CSV");
  CommonEstimationFlags boot_flags;
  boot_flags.attach(boot, /*with_mean_lambdas=*/false);
  double boot_alpha = 0.05;
  std::int64_t boot_b = 1000;
  std::optional<std::uint64_t> boot_seed;
  std::optional<std::string> boot_output;
  boot->add_option("--alpha", boot_alpha, "level in (0, 1)");
  boot->add_option("-B,--draws", boot_b, "bootstrap draws (>= 100)");
  boot->add_option("--seed", boot_seed, "RNG seed (default: ROBUST_HD_SEED or built-in)");
  boot->add_option("--output", boot_output, "write JSON here instead of stdout");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo scenario");
  std::optional<std::string> sim_config;
  std::string sim_output_dir = ".";
  bool sim_full = false;
  bool sim_no_svg = false;
  ScenarioConfig sim_overrides;
  std::string sim_statistics;
  std::string sim_distribution;
  std::string sim_adversary;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--config", sim_config, "scenario config file (key = value lines)");
  sim->add_option("--n", sim_overrides.n, "observations per replication");
  sim->add_option("--d", sim_overrides.d, "dimension");
  sim->add_option("--nu", sim_overrides.distribution.nu, "t degrees of freedom");
  sim->add_option("--distribution", sim_distribution,
                  "student_t | standard_normal | user_mixture");
  sim->add_option("--eta-bar", sim_overrides.eta_bar, "contamination budget");
  sim->add_option("--lambda1", sim_overrides.lambda1, "mean lambda1");
  sim->add_option("--lambda2", sim_overrides.lambda2, "mean lambda2");
  sim->add_option("--lambda1p", sim_overrides.lambda1_prime, "covariance lambda1");
  sim->add_option("--lambda2p", sim_overrides.lambda2_prime, "covariance lambda2");
  sim->add_option("--replications", sim_overrides.replications, "replication count");
  sim->add_option("--bootstrap-B", sim_overrides.bootstrap_b, "bootstrap draws per replication");
  sim->add_option("--alpha", sim_overrides.alpha, "test level");
  sim->add_option("--statistics", sim_statistics, "comma-separated statistic list");
  sim->add_option("--comparator-k", sim_overrides.comparator_trim_k,
                  "per-tail trim count of the comparator");
  sim->add_option("--adversary", sim_adversary, "adversary kind");
  sim->add_option("--magnitude", sim_overrides.adversary.magnitude, "adversary magnitude");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--threads", sim_overrides.threads, "worker threads (0 = auto)");
  sim->add_option("--output-dir", sim_output_dir, "artifact directory");
  sim->add_flag("--full", sim_full, "run 10,000 replications");
  sim->add_flag("--no-svg", sim_no_svg, "skip SVG rendering");

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "feasibility and rate-bound report");
  std::int64_t diag_n = 200;
  std::int64_t diag_d = 500;
  double diag_eta = 0.0;
  double diag_l1 = 1.05;
  double diag_l2 = 0.1;
  double diag_l1p = 1.05;
  double diag_l2p = 0.07;
  double diag_m = 4.0;
  double diag_c = 1.0;
  std::optional<std::string> diag_output;
  diag->add_option("--n", diag_n, "sample size")->required();
  diag->add_option("--d", diag_d, "dimension")->required();
  diag->add_option("--eta-bar", diag_eta, "contamination budget");
  diag->add_option("--lambda1", diag_l1, "mean lambda1");
  diag->add_option("--lambda2", diag_l2, "mean lambda2");
  diag->add_option("--lambda1p", diag_l1p, "covariance lambda1");
  diag->add_option("--lambda2p", diag_l2p, "covariance lambda2");
  diag->add_option("--m", diag_m, "moment count for the rate bounds (> 2)");
  diag->add_option("--C", diag_c, "user constant multiplying every bound");
  diag->add_option("--output", diag_output, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    emit_error("argument", e.what());
    return kExitArgument;
  }

  try {
    if (*estimate) return cmd_estimate(est_flags, est_statistic, est_mu, est_output);
    if (*cov) return cmd_cov(cov_flags, cov_output_dir);
    if (*boot)
      return cmd_bootstrap(boot_flags, boot_alpha, boot_b,
                           boot_seed ? *boot_seed : default_seed(), boot_output);
    if (*sim) {
      if (!sim_statistics.empty())
        sim_overrides.statistics = cli::parse_statistics(sim_statistics);
      if (!sim_distribution.empty())
        sim_overrides.distribution.kind = cli::parse_distribution(sim_distribution);
      if (!sim_adversary.empty())
        sim_overrides.adversary.kind = cli::parse_adversary_kind(sim_adversary);
      sim_overrides.seed = sim_seed ? *sim_seed : default_seed();
      std::vector<std::string> given;
      for (const auto* opt : sim->get_options())
        if (opt->count() > 0) given.push_back(opt->get_name());
      if (sim_seed) given.push_back("--seed");
      if (!sim_statistics.empty()) given.push_back("--statistics");
      if (!sim_distribution.empty()) given.push_back("--distribution");
      if (!sim_adversary.empty()) given.push_back("--adversary");
      return cmd_simulate(sim_config, sim_overrides, given, sim_output_dir, sim_full,
                          sim_no_svg);
    }
    if (*diag)
      return cmd_diagnose(diag_n, diag_d, diag_eta, diag_l1, diag_l2, diag_l1p, diag_l2p,
                          diag_m, diag_c, diag_output);
  } catch (const InfeasibleEpsilon& e) {
    emit_error("infeasible_epsilon", e.what());
    return kExitInfeasible;
  } catch (const ArgumentError& e) {
    emit_error("argument", e.what());
    return kExitArgument;
  } catch (const DataError& e) {
    emit_error("data", e.what());
    return kExitData;
  } catch (const DegenerateScaleError& e) {
    emit_error("degenerate_scale", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return kExitArgument;
}
