#include "robusthd/distributions.hpp"

namespace robusthd {

void DistributionSpec::validate() const {
  switch (kind) {
    case DistributionKind::kStudentT:
      if (!(nu > 2.0)) throw ArgumentError("DistributionSpec: t requires nu > 2");
      break;
    case DistributionKind::kUserMixture:
      if (!(mixture_weight >= 0.0 && mixture_weight <= 1.0))
        throw ArgumentError("DistributionSpec: mixture weight outside [0, 1]");
      if (!(mixture_scale > 0.0))
        throw ArgumentError("DistributionSpec: mixture scale must be positive");
      break;
    case DistributionKind::kStandardNormal:
      break;
  }
}

double DistributionSpec::coordinate_variance() const {
  switch (kind) {
    case DistributionKind::kStudentT:
      return nu / (nu - 2.0);
    case DistributionKind::kStandardNormal:
      return 1.0;
    case DistributionKind::kUserMixture:
      return (1.0 - mixture_weight) + mixture_weight * mixture_scale * mixture_scale;
  }
  return 1.0;
}

double DistributionSpec::draw(RngStream& rng) const {
  switch (kind) {
    case DistributionKind::kStudentT:
      return rng.next_student_t(nu);
    case DistributionKind::kStandardNormal:
      return rng.next_normal();
    case DistributionKind::kUserMixture:
      return rng.next_uniform() < mixture_weight ? mixture_scale * rng.next_normal()
                                                 : rng.next_normal();
  }
  return 0.0;
}

SampleMatrix DistributionSpec::sample(std::int64_t n, std::int64_t d, RngStream& rng) const {
  validate();
  SampleMatrix m;
  m.values.resize(n, d);
  double* p = m.values.data();
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
  for (std::size_t i = 0; i < count; ++i) p[i] = draw(rng);
  return m;
}

}  // namespace robusthd
