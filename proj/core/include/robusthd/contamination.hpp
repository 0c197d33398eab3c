#pragma once

#include <cstdint>

#include "robusthd/rng.hpp"
#include "robusthd/sample_matrix.hpp"

namespace robusthd {

enum class AdversaryKind {
  kNone,
  kFixedOutlier,          // chosen rows replaced by +-magnitude everywhere
  kLocationShift,         // chosen rows shifted by +-magnitude everywhere
  kAdaptiveMaxCoordinate, // per coordinate, pushes the winsorized mean outward
};

enum class TargetSign { kPositive, kNegative, kBoth };

// Contamination strategy operating under the budget |{i: x~_i != x_i}| <=
// floor(eta_bar * n). Rows to corrupt are chosen by a seeded draw without
// replacement.
struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kNone;
  double eta_bar = 0.0;        // budget fraction in [0, 1/2)
  double magnitude = 0.0;
  TargetSign target_sign = TargetSign::kPositive;

  void validate() const;
};

struct ContaminationResult {
  SampleMatrix data;
  std::int64_t modified_count = 0;
};

// Returns the corrupted sample and the number of rows actually modified.
// eta_bar = 0 (or kind none) returns the input bit-identically.
ContaminationResult apply_adversary(const SampleMatrix& data, const AdversarySpec& spec,
                                    RngStream& rng);

// Extension point for user strategies: any callable mutating up to
// `budget` rows in place.
template <typename Fn>
ContaminationResult apply_custom_adversary(const SampleMatrix& data, double eta_bar, Fn&& fn) {
  if (!(eta_bar >= 0.0 && eta_bar < 0.5))
    throw ArgumentError("apply_custom_adversary: eta_bar must lie in [0, 1/2)");
  ContaminationResult out;
  out.data = data;
  const auto budget =
      static_cast<std::int64_t>(eta_bar * static_cast<double>(data.n()));
  out.modified_count = fn(out.data, budget);
  if (out.modified_count > budget)
    throw PreconditionError("apply_custom_adversary: strategy exceeded its budget");
  return out;
}

}  // namespace robusthd
