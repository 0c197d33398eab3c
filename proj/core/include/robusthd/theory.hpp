#pragma once

#include <cstdint>
#include <utility>

#include "robusthd/covariance.hpp"

namespace robusthd {

enum class LogArg { kDn, kD2n };

// Quantile-control constants from the two Lambert W branches. With
// r = log(arg)/(eps * n),
//   c1 = -A+ W_0(-exp(-(r + A+)/A+)),   c2 = -A- W_{-1}(-exp(-(r + A-)/A-)),
// where A+ = 1 - 1{eta>0}/lambda1 and A- = 1 + 1{eta>0}/lambda1.
struct CConstants {
  double c1 = 0.0;       // in (0, a_plus)
  double c2 = 0.0;       // in (a_minus, inf)
  double a_plus = 1.0;
  double a_minus = 1.0;
  double r = 0.0;
};

CConstants c_constants(std::int64_t n, std::int64_t d, double eps, double lambda1,
                       bool eta_positive, LogArg log_arg);

enum class RateKind {
  kGaussWinsorized,  // Gaussian approximation bound for the winsorized mean
  kNormalized,       // its normalized (correlation-form) variant
  kTrimmed,          // trimmed-mean variant
  kCovarianceRate,   // entrywise covariance estimation rate
  kBootstrap,        // bootstrap approximation bound
};

// Theoretical bound evaluated with an explicit user constant C (the bounds
// only pin the constant up to existence, so these are shape diagnostics,
// not error certificates).
struct RateBound {
  double value = 0.0;
  RateKind kind = RateKind::kGaussWinsorized;
  double constant_c = 1.0;
};

RateBound rate_bound(RateKind kind, std::int64_t n, std::int64_t d, double m, double eta_bar,
                     double constant_c = 1.0);

// Closed-form bracket for the p-quantile of any law with centered m-th
// moment sigma_m^m:  mean - sigma/p^{1/m} <= Q_p <= mean + sigma/(1-p)^{1/m}.
std::pair<double, double> quantile_mean_envelope(double mean, double sigma_m, double m,
                                                 double p);

// Two-sided Gaussian anti-concentration: widening a rectangle by delta_bar
// moves its probability by at most (delta_bar / sigma_min)(sqrt(2 log d) + 4).
double anticoncentration_bound(double delta_bar, double sigma_min, std::int64_t d);

// Milder Lambert-form feasibility for the covariance schedule:
// eps' (c1' + c2') < 1. Implied by the simple condition; the returned
// components hold eps'*c1' and eps'*c2'.
FeasibilityReport sharp_feasibility(std::int64_t n, std::int64_t d, double eps_prime,
                                    double lambda1_prime, bool eta_positive);

}  // namespace robusthd
