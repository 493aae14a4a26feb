#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

namespace granular {

/// Deterministic random generator (xoshiro256** seeded through splitmix64).
/// The toolkit never uses <random> distributions: their output is
/// implementation-defined, and replaying a recorded seed must give
/// byte-identical results on every platform.
///
/// Independent streams are derived from (master seed, purpose, index) so that
/// Monte Carlo trials, granules, and cluster points can be generated in any
/// order, or in parallel, without changing the result.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  /// Substream keyed by a purpose tag and an element index.
  static Rng derive(std::uint64_t master, std::uint64_t purpose,
                    std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_open01();

  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (second value cached).
  double gaussian();

  /// Uniform integer in [0, bound), bound > 0. Rejection sampled, no modulo bias.
  std::size_t uniform_index(std::size_t bound);

private:
  std::array<std::uint64_t, 4> state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

// Stream purpose tags. Values are part of the reproducibility contract:
// changing them changes every seeded output.
namespace stream {
inline constexpr std::uint64_t kTrial = 1;
inline constexpr std::uint64_t kPointSet = 2;
inline constexpr std::uint64_t kGranule = 3;
inline constexpr std::uint64_t kClusterCenter = 4;
inline constexpr std::uint64_t kClusterPoint = 5;
inline constexpr std::uint64_t kKmeansInit = 6;
inline constexpr std::uint64_t kOwnGranule = 7;
inline constexpr std::uint64_t kFrameTest = 100;
}  // namespace stream

}  // namespace granular
