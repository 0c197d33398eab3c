#pragma once

#include <string>

#include "robusthd/scenario.hpp"

namespace robusthd {

// JSON text of the full scenario summary (frequencies, KS distances,
// schedules, feasibility, runtime metadata).
std::string summary_to_json(const ReplicationSummary& summary);

void write_summary_json(const std::string& path, const ReplicationSummary& summary);

// Minimal standalone SVG line rendering of a P-P curve (reference CDF on
// the x axis, empirical CDF on the y axis, diagonal for reference).
void write_pp_svg(const std::string& path, const PPCurve& curve, const std::string& title);

// summary.json plus pp_<statistic>.csv / pp_<statistic>.svg (and
// pp_<statistic>_bootstrap.* where a bootstrap law was computed) under dir.
void write_scenario_artifacts(const std::string& dir, const ReplicationSummary& summary,
                              bool with_svg = true);

}  // namespace robusthd
