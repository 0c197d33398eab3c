#pragma once

namespace robusthd {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse standard normal CDF (Wichura's PPND16 rational approximations),
// accurate to well below 1e-9 over (0, 1).
double inverse_normal_cdf(double p);

}  // namespace robusthd
