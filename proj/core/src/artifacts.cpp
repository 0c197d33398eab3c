#include "robusthd/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "robusthd/csv.hpp"

namespace robusthd {

namespace {

using nlohmann::json;

const char* distribution_name(DistributionKind k) {
  switch (k) {
    case DistributionKind::kStudentT:
      return "student_t";
    case DistributionKind::kStandardNormal:
      return "standard_normal";
    case DistributionKind::kUserMixture:
      return "user_mixture";
  }
  return "unknown";
}

const char* adversary_name(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::kNone:
      return "none";
    case AdversaryKind::kFixedOutlier:
      return "fixed_outlier";
    case AdversaryKind::kLocationShift:
      return "location_shift";
    case AdversaryKind::kAdaptiveMaxCoordinate:
      return "adaptive_max_coordinate";
  }
  return "unknown";
}

json schedule_to_json(const EpsilonSchedule& s) {
  return json{{"mode", s.mode == ScheduleMode::kMean ? "mean" : "covariance"},
              {"epsilon", s.epsilon},
              {"lower_index", s.lower_index},
              {"upper_index", s.upper_index},
              {"valid", s.valid},
              {"eta_bar", s.eta_bar},
              {"lambda1", s.lambda1},
              {"lambda2", s.lambda2}};
}

json feasibility_to_json(const FeasibilityReport& f) {
  return json{{"lhs", f.lhs_value},
              {"satisfied", f.satisfied},
              {"components", {f.component_eps, f.component_log, f.component_root}}};
}

double quantile_of(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
  k = std::min(std::max<std::size_t>(k, 1), v.size());
  return v[k - 1];
}

}  // namespace

std::string summary_to_json(const ReplicationSummary& summary) {
  const ScenarioConfig& cfg = summary.config;
  json cfg_json{
      {"n", cfg.n},
      {"d", cfg.d},
      {"distribution", distribution_name(cfg.distribution.kind)},
      {"nu", cfg.distribution.nu},
      {"eta_bar", cfg.eta_bar},
      {"lambda1", cfg.lambda1},
      {"lambda2", cfg.lambda2},
      {"lambda1_prime", cfg.lambda1_prime},
      {"lambda2_prime", cfg.lambda2_prime},
      {"replications", cfg.replications},
      {"bootstrap_B", cfg.bootstrap_b},
      {"alpha", cfg.alpha},
      {"seed", cfg.seed},
      {"adversary",
       {{"kind", adversary_name(cfg.adversary.kind)},
        {"eta_bar", cfg.eta_bar},
        {"magnitude", cfg.adversary.magnitude}}},
  };
  if (cfg.distribution.kind == DistributionKind::kUserMixture) {
    cfg_json["mixture_weight"] = cfg.distribution.mixture_weight;
    cfg_json["mixture_scale"] = cfg.distribution.mixture_scale;
  }

  json stats = json::array();
  for (const auto& s : summary.statistics) {
    json item{{"name", s.name}, {"implementable", s.implementable}};
    if (!s.implementable) {
      item["reason"] = s.not_implementable_reason;
    } else {
      item["critical_value_gaussian"] = s.critical_gaussian;
      item["rejection_frequency_gaussian"] = s.rejection_gaussian;
      item["ks_distance"] = s.ks;
      item["norm_median"] = quantile_of(s.norms, 0.5);
      item["norm_q95"] = quantile_of(s.norms, 0.95);
      if (s.has_bootstrap) item["rejection_frequency_bootstrap"] = s.rejection_bootstrap;
    }
    stats.push_back(std::move(item));
  }

  json root{
      {"config", cfg_json},
      {"schedule_mean", schedule_to_json(summary.schedule_mean)},
      {"schedule_covariance", schedule_to_json(summary.schedule_cov)},
      {"reference_critical_value", summary.reference_critical.value},
      {"population_variance", summary.population_variance},
      {"statistics", stats},
      {"wall_clock_seconds", summary.wall_seconds},
      {"threads", summary.threads_used},
  };
  if (summary.feasibility_defined) {
    root["feasibility"] = feasibility_to_json(summary.feasibility);
    root["sharp_feasibility"] = feasibility_to_json(summary.sharp);
  }
  if (!summary.covariance_max_errors.empty()) {
    root["covariance_max_entry_error"] = {
        {"median", quantile_of(summary.covariance_max_errors, 0.5)},
        {"q90", quantile_of(summary.covariance_max_errors, 0.9)},
    };
  }
  return root.dump(2);
}

void write_summary_json(const std::string& path, const ReplicationSummary& summary) {
  std::ofstream out(path);
  if (!out) throw DataError("artifacts: cannot write " + path);
  out << summary_to_json(summary) << "\n";
}

void write_pp_svg(const std::string& path, const PPCurve& curve, const std::string& title) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("artifacts: cannot write " + path);
  const int size = 480;
  const int margin = 40;
  const double span = size - 2.0 * margin;
  auto px = [&](double v) { return margin + v * span; };
  auto py = [&](double v) { return size - margin - v * span; };

  std::fprintf(f,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
               "viewBox=\"0 0 %d %d\">\n",
               size, size, size, size);
  std::fprintf(f, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", size, size);
  std::fprintf(f,
               "<rect x=\"%d\" y=\"%d\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" "
               "stroke=\"black\"/>\n",
               margin, margin, span, span);
  std::fprintf(f,
               "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\" "
               "stroke-dasharray=\"4 3\"/>\n",
               px(0.0), py(0.0), px(1.0), py(1.0));
  std::fprintf(f, "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"");
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    std::fprintf(f, "%.2f,%.2f ", px(curve.cdf_reference[i]), py(curve.cdf_empirical[i]));
  std::fputs("\"/>\n", f);
  std::fprintf(f,
               "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"13\">%s</text>\n",
               margin, margin - 10, title.c_str());
  std::fprintf(
      f, "<text x=\"%.0f\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">reference"
         "</text>\n",
      px(0.5) - 25, size - 12);
  std::fputs("</svg>\n", f);
  std::fclose(f);
}

void write_scenario_artifacts(const std::string& dir, const ReplicationSummary& summary,
                              bool with_svg) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  write_summary_json((fs::path(dir) / "summary.json").string(), summary);
  for (const auto& s : summary.statistics) {
    if (!s.implementable) continue;
    const std::string base = (fs::path(dir) / ("pp_" + s.name)).string();
    write_pp_csv(base + ".csv", s.pp_gaussian);
    if (with_svg) write_pp_svg(base + ".svg", s.pp_gaussian, s.name + " vs gaussian");
    if (s.has_bootstrap) {
      write_pp_csv(base + "_bootstrap.csv", s.pp_bootstrap);
      if (with_svg)
        write_pp_svg(base + "_bootstrap.svg", s.pp_bootstrap, s.name + " vs bootstrap");
    }
  }
}

}  // namespace robusthd
