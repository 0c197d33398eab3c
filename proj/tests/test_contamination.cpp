#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "robusthd/contamination.hpp"
#include "robusthd/estimators.hpp"

using namespace robusthd;

namespace {

SampleMatrix make_noise(std::mt19937_64& gen, Index n, Index d) {
  std::normal_distribution<double> z(0.0, 1.0);
  SampleMatrix m;
  m.values.resize(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) m.values(i, j) = z(gen);
  return m;
}

}  // namespace

TEST_CASE("zero budget returns the input bit-identically") {
  std::mt19937_64 gen(1);
  const auto m = make_noise(gen, 30, 4);
  for (AdversaryKind kind : {AdversaryKind::kNone, AdversaryKind::kFixedOutlier,
                             AdversaryKind::kLocationShift,
                             AdversaryKind::kAdaptiveMaxCoordinate}) {
    AdversarySpec spec;
    spec.kind = kind;
    spec.eta_bar = 0.0;
    spec.magnitude = 100.0;
    RngStream rng(5, 0, stream_block::kAdversary);
    const auto result = apply_adversary(m, spec, rng);
    CHECK(result.modified_count == 0);
    CHECK(result.data.values == m.values);
  }
}

TEST_CASE("budget arithmetic: floor(eta n) rows at most") {
  std::mt19937_64 gen(2);
  const auto m = make_noise(gen, 100, 3);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kFixedOutlier;
  spec.eta_bar = 0.05;
  spec.magnitude = 1e6;
  RngStream rng(6, 0, stream_block::kAdversary);
  const auto result = apply_adversary(m, spec, rng);
  CHECK(result.modified_count == 5);
  Index changed = 0;
  for (Index i = 0; i < 100; ++i)
    if ((result.data.values.row(i).array() != m.values.row(i).array()).any()) ++changed;
  CHECK(changed <= 5);
}

TEST_CASE("budget property over random fractions and kinds") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 10 + static_cast<Index>(gen() % 120);
    const auto m = make_noise(gen, n, 2);
    AdversarySpec spec;
    spec.kind = static_cast<AdversaryKind>(1 + gen() % 3);
    spec.eta_bar = 0.49 * u(gen);
    spec.magnitude = 10.0;
    RngStream rng(7, static_cast<std::uint64_t>(trial), stream_block::kAdversary);
    const auto result = apply_adversary(m, spec, rng);
    const auto budget = static_cast<std::int64_t>(spec.eta_bar * static_cast<double>(n));
    CHECK(result.modified_count <= budget);
    Index changed = 0;
    for (Index i = 0; i < n; ++i)
      if ((result.data.values.row(i).array() != m.values.row(i).array()).any()) ++changed;
    CHECK(changed <= budget);
  }
}

TEST_CASE("fixed outlier writes the signed magnitude everywhere in chosen rows") {
  std::mt19937_64 gen(4);
  const auto m = make_noise(gen, 40, 3);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kFixedOutlier;
  spec.eta_bar = 0.1;
  spec.magnitude = 777.0;
  spec.target_sign = TargetSign::kNegative;
  RngStream rng(8, 0, stream_block::kAdversary);
  const auto result = apply_adversary(m, spec, rng);
  CHECK(result.modified_count == 4);
  Index hit = 0;
  for (Index i = 0; i < 40; ++i)
    if ((result.data.values.row(i).array() == -777.0).all()) ++hit;
  CHECK(hit == 4);
}

TEST_CASE("location shift adds the magnitude to chosen rows") {
  std::mt19937_64 gen(5);
  const auto m = make_noise(gen, 20, 2);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kLocationShift;
  spec.eta_bar = 0.2;
  spec.magnitude = 9.5;
  spec.target_sign = TargetSign::kPositive;
  RngStream rng(9, 0, stream_block::kAdversary);
  const auto result = apply_adversary(m, spec, rng);
  Index shifted = 0;
  for (Index i = 0; i < 20; ++i) {
    const Eigen::ArrayXd diff =
        result.data.values.row(i).array() - m.values.row(i).array();
    if ((diff == 0.0).all()) continue;
    CHECK((diff - 9.5).abs().maxCoeff() < 1e-12);
    ++shifted;
  }
  CHECK(shifted == 4);
}

TEST_CASE("adaptive adversary pushes along the winsorized-mean direction") {
  std::mt19937_64 gen(6);
  auto m = make_noise(gen, 50, 2);
  m.values.col(0).array() += 3.0;  // strong positive lean
  m.values.col(1).array() -= 3.0;  // strong negative lean
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAdaptiveMaxCoordinate;
  spec.eta_bar = 0.1;
  spec.magnitude = 1000.0;
  RngStream rng(10, 0, stream_block::kAdversary);
  const auto result = apply_adversary(m, spec, rng);
  CHECK(result.modified_count == 5);
  for (Index i = 0; i < 50; ++i) {
    if ((result.data.values.row(i).array() == m.values.row(i).array()).all()) continue;
    CHECK(result.data.values(i, 0) == 1000.0);
    CHECK(result.data.values(i, 1) == -1000.0);
  }
}

TEST_CASE("non-finite magnitude is rejected") {
  std::mt19937_64 gen(7);
  const auto m = make_noise(gen, 10, 1);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kFixedOutlier;
  spec.eta_bar = 0.1;
  spec.magnitude = std::numeric_limits<double>::infinity();
  RngStream rng(11, 0, stream_block::kAdversary);
  CHECK_THROWS_AS(apply_adversary(m, spec, rng), ArgumentError);
}

TEST_CASE("winsorization defense: thresholds stay in the clean range") {
  std::mt19937_64 gen(8);
  const Index n = 60;
  const auto clean = make_noise(gen, n, 3);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kFixedOutlier;
  spec.eta_bar = 0.05;  // 3 rows
  spec.magnitude = 1e6;
  RngStream rng(12, 0, stream_block::kAdversary);
  const auto result = apply_adversary(clean, spec, rng);
  CHECK(result.modified_count == 3);

  // ceil(eps n) = 4 > 3 contaminated rows: the outliers fall outside the
  // retained order-statistic window.
  EpsilonSchedule sched;
  sched.mode = ScheduleMode::kMean;
  sched.n = n;
  sched.d = 3;
  sched.valid = true;
  sched.lower_index = 4;
  sched.upper_index = n - 3;
  const auto cols = winsorize_columns(result.data, sched);
  for (Index j = 0; j < 3; ++j) {
    CHECK(cols.alpha[j] >= clean.values.col(j).minCoeff());
    CHECK(cols.beta[j] <= clean.values.col(j).maxCoeff());
  }
}

TEST_CASE("row choice is deterministic per stream") {
  std::mt19937_64 gen(9);
  const auto m = make_noise(gen, 25, 2);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kFixedOutlier;
  spec.eta_bar = 0.2;
  spec.magnitude = 5.0;
  RngStream a(13, 3, stream_block::kAdversary);
  RngStream b(13, 3, stream_block::kAdversary);
  const auto ra = apply_adversary(m, spec, a);
  const auto rb = apply_adversary(m, spec, b);
  CHECK(ra.data.values == rb.data.values);
}

TEST_CASE("custom adversaries are budget-checked") {
  std::mt19937_64 gen(10);
  const auto m = make_noise(gen, 20, 1);
  const auto ok = apply_custom_adversary(m, 0.25, [](SampleMatrix& data, std::int64_t budget) {
    for (std::int64_t i = 0; i < budget; ++i) data.values(i, 0) = 1e9;
    return budget;
  });
  CHECK(ok.modified_count == 5);
  CHECK_THROWS_AS(
      apply_custom_adversary(m, 0.25,
                             [](SampleMatrix& data, std::int64_t) {
                               data.values.setZero();
                               return static_cast<std::int64_t>(data.n());
                             }),
      PreconditionError);
}
