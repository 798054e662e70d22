#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dsb {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to expand seeds and
/// to derive independent streams from (seed, counter) pairs.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

/// xoshiro256** (Blackman, Vigna 2018) with hand-written distributions.
/// The standard library distributions are implementation-defined, so every
/// transform here is spelled out to keep sequences identical across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Stream keyed by (seed, stream): the same pair always yields the same
  /// sequence, and distinct pairs are decorrelated through SplitMix64.
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Standard normal via the Box-Muller transform; caches the second variate.
  double normal();

  /// k distinct values from [0, n), sorted, via partial Fisher-Yates.
  std::vector<std::int32_t> sample_without_replacement(std::int32_t n, std::int32_t k);

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dsb
