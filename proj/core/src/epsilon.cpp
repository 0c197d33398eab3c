#include "robusthd/epsilon.hpp"

#include <cmath>

namespace robusthd {

EpsilonSchedule epsilon_schedule(std::int64_t n, std::int64_t d, double eta_bar,
                                 double lambda1, double lambda2, ScheduleMode mode) {
  if (n <= 3) throw ArgumentError("epsilon_schedule: requires n > 3");
  if (d < 1) throw ArgumentError("epsilon_schedule: requires d >= 1");
  if (!(eta_bar >= 0.0 && eta_bar < 0.5))
    throw ArgumentError("epsilon_schedule: eta_bar must lie in [0, 1/2)");
  if (!(lambda1 > 1.0)) throw ArgumentError("epsilon_schedule: lambda1 must exceed 1");
  if (!(lambda2 > 0.0)) throw ArgumentError("epsilon_schedule: lambda2 must be positive");

  const double nd = static_cast<double>(n);
  const double log_arg = mode == ScheduleMode::kMean
                             ? std::log(static_cast<double>(d) * nd)
                             : 2.0 * std::log(static_cast<double>(d)) + std::log(nd);

  EpsilonSchedule s;
  s.mode = mode;
  s.n = n;
  s.d = d;
  s.eta_bar = eta_bar;
  s.lambda1 = lambda1;
  s.lambda2 = lambda2;
  s.epsilon = lambda1 * eta_bar + lambda2 * log_arg / nd;
  s.valid = s.epsilon > 0.0 && s.epsilon < 0.5;
  s.lower_index = static_cast<std::int64_t>(std::ceil(s.epsilon * nd));
  s.upper_index = static_cast<std::int64_t>(std::ceil((1.0 - s.epsilon) * nd));
  if (s.lower_index < 1) s.lower_index = 1;
  if (s.upper_index > n) s.upper_index = n;
  return s;
}

}  // namespace robusthd
