#pragma once

#include <cstdint>

#include "robusthd/errors.hpp"

namespace robusthd {

// Keyed stream: (master_seed, replication, block) -> independent sequence.
// Workers never share a stream; replication r always sees the same draws no
// matter which thread runs it, so results are schedule-independent.
//
// The generator is xoshiro256++ seeded through a SplitMix64 key chain.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t block);

  std::uint64_t next_u64();

  // Strictly inside (0, 1); safe to feed the inverse normal CDF.
  double next_uniform();

  // Standard normal via the inverse CDF.
  double next_normal();

  // Marsaglia-Tsang; any shape > 0, unit scale.
  double next_gamma(double shape);

  double next_chi_squared(double nu) { return 2.0 * next_gamma(0.5 * nu); }

  // z / sqrt(chi2_nu / nu); nu > 0.
  double next_student_t(double nu);

 private:
  std::uint64_t s_[4];
};

// Stream block ids used by the simulation harness; user code may use any
// other values.
namespace stream_block {
inline constexpr std::uint64_t kData = 0;
inline constexpr std::uint64_t kAdversary = 1;
inline constexpr std::uint64_t kBootstrap = 2;
inline constexpr std::uint64_t kReference = 3;
}  // namespace stream_block

}  // namespace robusthd
