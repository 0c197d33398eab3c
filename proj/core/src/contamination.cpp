#include "robusthd/contamination.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "robusthd/estimators.hpp"

namespace robusthd {

void AdversarySpec::validate() const {
  if (!(eta_bar >= 0.0 && eta_bar < 0.5))
    throw ArgumentError("AdversarySpec: eta_bar must lie in [0, 1/2)");
  if (!std::isfinite(magnitude)) throw ArgumentError("AdversarySpec: non-finite magnitude");
}

namespace {

// First `count` entries of a seeded partial Fisher-Yates draw over [0, n).
std::vector<Index> choose_rows(Index n, std::int64_t count, RngStream& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (std::int64_t i = 0; i < count; ++i) {
    const auto remaining = static_cast<std::uint64_t>(n - i);
    const auto j = static_cast<Index>(i) + static_cast<Index>(rng.next_u64() % remaining);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(count));
  return idx;
}

double signed_magnitude(const AdversarySpec& spec, RngStream& rng) {
  switch (spec.target_sign) {
    case TargetSign::kPositive:
      return spec.magnitude;
    case TargetSign::kNegative:
      return -spec.magnitude;
    case TargetSign::kBoth:
      return (rng.next_u64() & 1u) ? spec.magnitude : -spec.magnitude;
  }
  return spec.magnitude;
}

}  // namespace

ContaminationResult apply_adversary(const SampleMatrix& data, const AdversarySpec& spec,
                                    RngStream& rng) {
  spec.validate();
  data.validate();

  ContaminationResult out;
  out.data = data;
  const auto budget = static_cast<std::int64_t>(
      std::floor(spec.eta_bar * static_cast<double>(data.n())));
  if (spec.kind == AdversaryKind::kNone || budget == 0) return out;

  const std::vector<Index> rows = choose_rows(data.n(), budget, rng);
  out.modified_count = budget;

  switch (spec.kind) {
    case AdversaryKind::kFixedOutlier:
      for (Index i : rows) out.data.values.row(i).setConstant(signed_magnitude(spec, rng));
      break;
    case AdversaryKind::kLocationShift:
      for (Index i : rows) out.data.values.row(i).array() += signed_magnitude(spec, rng);
      break;
    case AdversaryKind::kAdaptiveMaxCoordinate: {
      // Inspects the clean sample: pushes each coordinate's winsorized mean
      // in the direction it already leans. Uses the harness default
      // schedule; falls back to plain column means if it is infeasible.
      Eigen::VectorXd direction;
      const EpsilonSchedule sched = epsilon_schedule(
          data.n(), data.d(), spec.eta_bar, 1.05, 0.1, ScheduleMode::kMean);
      if (sched.valid) {
        const WinsorizedColumns cols = winsorize_columns(data, sched);
        direction = cols.sums;
      } else {
        direction = data.values.colwise().sum();
      }
      Eigen::VectorXd row(data.d());
      for (Index j = 0; j < data.d(); ++j)
        row[j] = direction[j] >= 0.0 ? spec.magnitude : -spec.magnitude;
      for (Index i : rows) out.data.values.row(i) = row.transpose();
      break;
    }
    case AdversaryKind::kNone:
      break;
  }
  return out;
}

}  // namespace robusthd
