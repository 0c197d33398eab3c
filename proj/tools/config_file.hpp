#pragma once

#include <string>

#include "robusthd/scenario.hpp"

namespace robusthd::cli {

// Flat "key = value" scenario configs with '#' comments; keys mirror the
// ScenarioConfig field names (dotted keys for the adversary block).
ScenarioConfig load_scenario_config(const std::string& path);

// Shared by the config file and the --statistics flag: comma-separated
// names out of {sample_mean, winsorized, trimmed, normalized,
// comparator_trim}.
std::vector<ScenarioStatistic> parse_statistics(const std::string& csv);

AdversaryKind parse_adversary_kind(const std::string& name);
TargetSign parse_target_sign(const std::string& name);
DistributionKind parse_distribution(const std::string& name);

}  // namespace robusthd::cli
