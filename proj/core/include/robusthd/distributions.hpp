#pragma once

#include "robusthd/rng.hpp"
#include "robusthd/sample_matrix.hpp"

namespace robusthd {

enum class DistributionKind { kStudentT, kStandardNormal, kUserMixture };

// Coordinate law for simulated data. All three kinds are mean-zero with
// i.i.d. coordinates, so the population covariance is diagonal with the
// per-coordinate variance below.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::kStudentT;
  double nu = 3.01;             // t degrees of freedom; > 2 keeps variances finite
  double mixture_weight = 0.1;  // user mixture: P(wide component)
  double mixture_scale = 3.0;   // user mixture: wide-component sd

  void validate() const;
  double coordinate_variance() const;
  double draw(RngStream& rng) const;
  SampleMatrix sample(std::int64_t n, std::int64_t d, RngStream& rng) const;
};

}  // namespace robusthd
