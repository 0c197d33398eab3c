#include "robusthd/rng.hpp"

#include <cmath>

#include "robusthd/normal.hpp"

namespace robusthd {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// SplitMix64 step: advances the state and returns a mixed output.
inline std::uint64_t splitmix_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t block) {
  // Fold the key triple into the SplitMix chain; each component passes
  // through a full avalanche before the next is absorbed.
  std::uint64_t state = master_seed ^ 0x243F6A8885A308D3ULL;
  state = splitmix_next(state) ^ (replication * 0xD6E8FEB86659FD93ULL);
  state = splitmix_next(state) ^ (block * 0xCA5A826395121157ULL);
  s_[0] = splitmix_next(state);
  s_[1] = splitmix_next(state);
  s_[2] = splitmix_next(state);
  s_[3] = splitmix_next(state);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() { return inverse_normal_cdf(next_uniform()); }

double RngStream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw ArgumentError("next_gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost: gamma(a) = gamma(a + 1) * U^{1/a}.
    const double u = next_uniform();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::next_student_t(double nu) {
  if (!(nu > 0.0)) throw ArgumentError("next_student_t: nu must be positive");
  const double z = next_normal();
  const double chi2 = next_chi_squared(nu);
  return z * std::sqrt(nu / chi2);
}

}  // namespace robusthd
