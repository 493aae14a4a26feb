#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "granular/types.hpp"

namespace granular {

enum class McScenario : std::uint8_t {
  PointVsPoints,
  PointVsSphereGranules,
  PointVsEllipsoids,
  RandomGranuleVsEllipsoids,
  LogconcaveGranules,
};

const char* scenario_name(McScenario s);
McScenario scenario_from_name(const std::string& name);

/// Scenario parameters. Only the fields a scenario reads matter to it:
///   PointVsPoints              n, set_size, alpha, density law
///   PointVsSphereGranules      n, set_size, alpha, granule_radius, law
///   PointVsEllipsoids          n, set_size, cap_sequence, epsilon, varsigma
///   RandomGranuleVsEllipsoids  same as PointVsEllipsoids
///   LogconcaveGranules         same, with Gaussian granules and sampled pairs
/// The density law (C, r) applies to the random point (and the obstacle set
/// in PointVsPoints); C = 1, r = 1 is the uniform ball.
struct McParams {
  std::size_t n = 100;
  std::size_t set_size = 1000;
  double alpha = 0.8;
  double granule_radius = 0.1;
  std::vector<double> cap_sequence;
  double epsilon = 0.4;
  double varsigma = 0.3;
  double density_C = 1.0;
  double density_r = 1.0;
};

struct SeparabilityReport {
  std::string scenario;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double empirical_frequency = 0.0;
  /// Matching closed-form lower bound (clamped at 0) when one exists;
  /// absent for the log-concave scenario.
  std::optional<double> theoretical_lower_bound;
  /// 99% normal-approximation half-width of the frequency estimate.
  double confidence_radius = 0.0;
  std::uint64_t seed = 0;  // replay key
};

/// Seeded Monte Carlo estimate of a separation probability. The obstacle
/// set (points or granules) is drawn once from the seed -- the theorems hold
/// for an arbitrary fixed set -- and each trial draws the random point (and
/// sampled granule points where applicable) from its own derived stream, so
/// the report is identical however trials are scheduled.
SeparabilityReport monte_carlo_separation(McScenario scenario,
                                          const McParams& params,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          std::size_t threads = 1);

}  // namespace granular
