#include "robusthd/lambert.hpp"

#include <cmath>
#include <limits>

#include "robusthd/errors.hpp"

namespace robusthd {

namespace {

constexpr double kInvE = 0.36787944117144232160;  // 1/e

// Series around the branch point x = -1/e in p = +-sqrt(2(e x + 1)):
// w = -1 + p - p^2/3 + 11 p^3/72 - 43 p^4/540 + 769 p^5/17280 - ...
double branch_point_series(double p) {
  return -1.0 +
         p * (1.0 + p * (-1.0 / 3.0 +
                         p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

// Below this distance from the branch point the series is already accurate
// to ~1e-14 while the defining equation evaluates with catastrophic
// cancellation, so the series result is returned unpolished.
constexpr double kSeriesOnly = 5e-5;  // threshold on e*x + 1

// Halley iterations on f(w) = w e^w - x.
double halley(double x, double w) {
  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    if (denom == 0.0) break;
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Newton on g(w) = log(-x) - log(-w) - w with g'(w) = -(1 + w)/w; stable
// deep in the lower branch where w e^w underflows relative precision.
double log_form_newton(double lx, double w) {
  for (int it = 0; it < 60; ++it) {
    const double g = lx - std::log(-w) - w;
    const double step = g * w / (1.0 + w);
    w += step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE) throw ArgumentError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();

  const double ex1 = std::fma(std::exp(1.0), x, 1.0);  // e*x + 1
  if (ex1 <= 1e-15) return -1.0;  // representable branch point
  if (ex1 < kSeriesOnly) return branch_point_series(std::sqrt(2.0 * ex1));

  double w;
  if (x < -0.3) {
    w = branch_point_series(std::sqrt(2.0 * ex1));
  } else if (x < 3.0) {
    w = x >= 0.0 ? x / (1.0 + x) : x * (1.0 - x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(x, w);
}

double lambert_wm1(double x) {
  if (std::isnan(x) || x < -kInvE || x >= 0.0)
    throw ArgumentError("lambert_wm1: argument outside [-1/e, 0)");

  const double ex1 = std::fma(std::exp(1.0), x, 1.0);
  if (ex1 <= 1e-15) return -1.0;  // representable branch point
  if (ex1 < kSeriesOnly) return branch_point_series(-std::sqrt(2.0 * ex1));

  double w;
  if (x < -0.25) {
    w = branch_point_series(-std::sqrt(2.0 * ex1));
  } else {
    // u - log(u) = -log(-x) =: L for u = -w > 1; the fixed point
    // u <- L + log(u) contracts for u > 1 and seeds a stable Newton
    // refinement in log form.
    const double lx = std::log(-x);
    const double big = -lx;
    double u = big + std::log(big);
    for (int it = 0; it < 8; ++it) u = big + std::log(u);
    w = log_form_newton(lx, -u);
  }
  if (w > -700.0) w = halley(x, w);
  return w;
}

}  // namespace robusthd
