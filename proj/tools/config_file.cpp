#include "config_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace robusthd::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& v, const std::string& key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ArgumentError("config: bad numeric value for " + key);
  return out;
}

std::int64_t to_int(const std::string& v, const std::string& key) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ArgumentError("config: bad integer value for " + key);
  return out;
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ArgumentError("config: bad boolean value for " + key);
}

}  // namespace

std::vector<ScenarioStatistic> parse_statistics(const std::string& csv) {
  std::vector<ScenarioStatistic> out;
  std::size_t begin = 0;
  while (begin <= csv.size()) {
    const auto comma = csv.find(',', begin);
    const auto token = trim(csv.substr(begin, comma == std::string::npos ? std::string::npos
                                                                         : comma - begin));
    if (!token.empty()) {
      if (token == "sample_mean") {
        out.push_back(ScenarioStatistic::kSampleMean);
      } else if (token == "winsorized") {
        out.push_back(ScenarioStatistic::kWinsorized);
      } else if (token == "trimmed") {
        out.push_back(ScenarioStatistic::kTrimmed);
      } else if (token == "normalized") {
        out.push_back(ScenarioStatistic::kNormalized);
      } else if (token == "comparator_trim") {
        out.push_back(ScenarioStatistic::kComparatorTrim);
      } else {
        throw ArgumentError("config: unknown statistic '" + token + "'");
      }
    }
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  if (out.empty()) throw ArgumentError("config: empty statistics list");
  return out;
}

AdversaryKind parse_adversary_kind(const std::string& name) {
  if (name == "none") return AdversaryKind::kNone;
  if (name == "fixed_outlier") return AdversaryKind::kFixedOutlier;
  if (name == "location_shift") return AdversaryKind::kLocationShift;
  if (name == "adaptive_max_coordinate") return AdversaryKind::kAdaptiveMaxCoordinate;
  throw ArgumentError("config: unknown adversary kind '" + name + "'");
}

TargetSign parse_target_sign(const std::string& name) {
  if (name == "positive" || name == "+") return TargetSign::kPositive;
  if (name == "negative" || name == "-") return TargetSign::kNegative;
  if (name == "both") return TargetSign::kBoth;
  throw ArgumentError("config: unknown target sign '" + name + "'");
}

DistributionKind parse_distribution(const std::string& name) {
  if (name == "student_t") return DistributionKind::kStudentT;
  if (name == "standard_normal") return DistributionKind::kStandardNormal;
  if (name == "user_mixture") return DistributionKind::kUserMixture;
  throw ArgumentError("config: unknown distribution '" + name + "'");
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("config: cannot open " + path);
  ScenarioConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("config: expected key = value at line " + std::to_string(line_no));
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));

    if (key == "n") {
      cfg.n = to_int(value, key);
    } else if (key == "d") {
      cfg.d = to_int(value, key);
    } else if (key == "distribution") {
      cfg.distribution.kind = parse_distribution(value);
    } else if (key == "nu") {
      cfg.distribution.nu = to_double(value, key);
    } else if (key == "mixture_weight") {
      cfg.distribution.mixture_weight = to_double(value, key);
    } else if (key == "mixture_scale") {
      cfg.distribution.mixture_scale = to_double(value, key);
    } else if (key == "eta_bar") {
      cfg.eta_bar = to_double(value, key);
    } else if (key == "lambda1") {
      cfg.lambda1 = to_double(value, key);
    } else if (key == "lambda2") {
      cfg.lambda2 = to_double(value, key);
    } else if (key == "lambda1_prime") {
      cfg.lambda1_prime = to_double(value, key);
    } else if (key == "lambda2_prime") {
      cfg.lambda2_prime = to_double(value, key);
    } else if (key == "replications") {
      cfg.replications = to_int(value, key);
    } else if (key == "bootstrap_B") {
      cfg.bootstrap_b = to_int(value, key);
    } else if (key == "alpha") {
      cfg.alpha = to_double(value, key);
    } else if (key == "statistics") {
      cfg.statistics = parse_statistics(value);
    } else if (key == "comparator_trim_k") {
      cfg.comparator_trim_k = to_int(value, key);
    } else if (key == "sample_mean_bootstrap") {
      cfg.sample_mean_bootstrap = to_bool(value, key);
    } else if (key == "adversary.kind") {
      cfg.adversary.kind = parse_adversary_kind(value);
    } else if (key == "adversary.eta_bar") {
      cfg.eta_bar = to_double(value, key);
      cfg.adversary.eta_bar = cfg.eta_bar;
    } else if (key == "adversary.magnitude") {
      cfg.adversary.magnitude = to_double(value, key);
    } else if (key == "adversary.sign") {
      cfg.adversary.target_sign = parse_target_sign(value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(value, key));
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(to_int(value, key));
    } else if (key == "pp_points") {
      cfg.pp_points = static_cast<int>(to_int(value, key));
    } else if (key == "track_covariance_error") {
      if (value == "auto") {
        cfg.track_covariance_error = -1;
      } else {
        cfg.track_covariance_error = to_bool(value, key) ? 1 : 0;
      }
    } else {
      throw ArgumentError("config: unknown key '" + key + "' at line " +
                          std::to_string(line_no));
    }
  }
  return cfg;
}

}  // namespace robusthd::cli
