#include "robusthd/theory.hpp"

#include <cassert>
#include <cmath>

#include "robusthd/lambert.hpp"

namespace robusthd {

CConstants c_constants(std::int64_t n, std::int64_t d, double eps, double lambda1,
                       bool eta_positive, LogArg log_arg) {
  if (n <= 3) throw ArgumentError("c_constants: requires n > 3");
  if (d < 1) throw ArgumentError("c_constants: requires d >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("c_constants: eps outside (0, 1)");
  if (!(lambda1 > 1.0)) throw ArgumentError("c_constants: lambda1 must exceed 1");

  const double log_d = std::log(static_cast<double>(d));
  const double log_n = std::log(static_cast<double>(n));
  const double log_arg_value = (log_arg == LogArg::kDn ? log_d : 2.0 * log_d) + log_n;

  CConstants c;
  c.r = log_arg_value / (eps * static_cast<double>(n));
  c.a_plus = eta_positive ? 1.0 - 1.0 / lambda1 : 1.0;
  c.a_minus = eta_positive ? 1.0 + 1.0 / lambda1 : 1.0;

  // Arguments lie in [-1/e, 0) whenever r > 0, so the branch calls cannot
  // leave their domains for validated inputs.
  const double arg_plus = -std::exp(-(c.r + c.a_plus) / c.a_plus);
  const double arg_minus = -std::exp(-(c.r + c.a_minus) / c.a_minus);
  c.c1 = -c.a_plus * lambert_w0(arg_plus);
  c.c2 = -c.a_minus * lambert_wm1(arg_minus);
  assert(c.c1 > 0.0 && c.c1 < c.a_plus);
  assert(c.c2 > c.a_minus);
  return c;
}

namespace {

struct RateTerms {
  double log_dn;     // log(d n)
  double log_d;      // log(d)
  double ratio;      // log(d n) / n
  double n;
};

RateTerms rate_terms(std::int64_t n, std::int64_t d) {
  RateTerms t;
  t.n = static_cast<double>(n);
  t.log_d = std::log(static_cast<double>(d));
  t.log_dn = t.log_d + std::log(t.n);
  t.ratio = t.log_dn / t.n;
  return t;
}

double pow_or_zero(double base, double expo) { return base == 0.0 ? 0.0 : std::pow(base, expo); }

// The three summands of the winsorized-mean Gaussian bound at C = 1.
double gauss_winsorized_unit(const RateTerms& t, double m, double eta) {
  const double first =
      std::pow(std::pow(t.log_dn, 5.0 - 2.0 / m) / std::pow(t.n, 1.0 - 2.0 / m), 0.25);
  const double second = (pow_or_zero(eta, 1.0 - 1.0 / m) + std::pow(t.ratio, 1.0 - 1.0 / m)) *
                        std::sqrt(t.n * t.log_d);
  const double third = std::sqrt(
      t.log_d * t.log_d * (pow_or_zero(eta, 1.0 - 2.0 / m) + std::pow(t.ratio, 1.0 - 2.0 / m)));
  return first + second + third;
}

// Covariance estimation bracket at C = 1; the ratio exponent is
// 1 - 1/min(m/2, 2).
double covariance_unit(const RateTerms& t, double m, double eta) {
  const double cap = std::min(m / 2.0, 2.0);
  return pow_or_zero(eta, 1.0 - 2.0 / m) + std::pow(t.ratio, 1.0 - 1.0 / cap);
}

}  // namespace

RateBound rate_bound(RateKind kind, std::int64_t n, std::int64_t d, double m, double eta_bar,
                     double constant_c) {
  if (!(m > 2.0)) throw ArgumentError("rate_bound: requires m > 2 moments");
  if (n <= 3) throw ArgumentError("rate_bound: requires n > 3");
  if (d < 2) throw ArgumentError("rate_bound: requires d >= 2");
  if (!(eta_bar >= 0.0 && eta_bar < 0.5))
    throw ArgumentError("rate_bound: eta_bar must lie in [0, 1/2)");
  if (!(constant_c > 0.0)) throw ArgumentError("rate_bound: constant must be positive");

  const RateTerms t = rate_terms(n, d);
  double unit = 0.0;
  switch (kind) {
    case RateKind::kGaussWinsorized:
      unit = gauss_winsorized_unit(t, m, eta_bar);
      break;
    case RateKind::kNormalized:
      unit = gauss_winsorized_unit(t, m, eta_bar) +
             std::sqrt(t.log_d * t.log_dn) * covariance_unit(t, m, eta_bar);
      break;
    case RateKind::kTrimmed:
      unit = gauss_winsorized_unit(t, m, eta_bar) +
             std::sqrt(t.n * t.log_d) *
                 (pow_or_zero(eta_bar, 1.0 - 1.0 / m) + std::pow(t.ratio, 1.0 - 1.0 / m));
      break;
    case RateKind::kCovarianceRate:
      unit = covariance_unit(t, m, eta_bar);
      break;
    case RateKind::kBootstrap:
      unit = gauss_winsorized_unit(t, m, eta_bar) +
             std::sqrt(t.log_d * t.log_d * covariance_unit(t, m, eta_bar));
      break;
  }
  RateBound b;
  b.kind = kind;
  b.constant_c = constant_c;
  b.value = constant_c * unit;
  return b;
}

std::pair<double, double> quantile_mean_envelope(double mean, double sigma_m, double m,
                                                 double p) {
  if (!(m >= 1.0)) throw ArgumentError("quantile_mean_envelope: requires m >= 1");
  if (!(sigma_m >= 0.0)) throw ArgumentError("quantile_mean_envelope: sigma_m must be >= 0");
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("quantile_mean_envelope: p outside (0, 1)");
  if (!std::isfinite(mean)) throw ArgumentError("quantile_mean_envelope: non-finite mean");
  const double lo = mean - sigma_m / std::pow(p, 1.0 / m);
  const double hi = mean + sigma_m / std::pow(1.0 - p, 1.0 / m);
  return {lo, hi};
}

double anticoncentration_bound(double delta_bar, double sigma_min, std::int64_t d) {
  if (!(delta_bar >= 0.0)) throw ArgumentError("anticoncentration_bound: delta must be >= 0");
  if (!(sigma_min > 0.0))
    throw ArgumentError("anticoncentration_bound: sigma_min must be positive");
  if (d < 1) throw ArgumentError("anticoncentration_bound: requires d >= 1");
  return delta_bar / sigma_min * (std::sqrt(2.0 * std::log(static_cast<double>(d))) + 4.0);
}

FeasibilityReport sharp_feasibility(std::int64_t n, std::int64_t d, double eps_prime,
                                    double lambda1_prime, bool eta_positive) {
  const CConstants c = c_constants(n, d, eps_prime, lambda1_prime, eta_positive, LogArg::kD2n);
  FeasibilityReport r;
  r.component_eps = eps_prime * c.c1;
  r.component_log = eps_prime * c.c2;
  r.component_root = 0.0;
  r.lhs_value = r.component_eps + r.component_log;
  r.satisfied = r.lhs_value < 1.0;
  return r;
}

}  // namespace robusthd
