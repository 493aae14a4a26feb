#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "granular/rng.hpp"
#include "granular/separability.hpp"
#include "granular/types.hpp"

namespace granular {

/// Uniform draws from the unit ball: Gaussian direction scaled by U^(1/n).
/// Each point has its own derived stream, so count and ordering do not
/// change individual draws.
Matrix sample_uniform_ball(std::size_t n, std::size_t count,
                           std::uint64_t seed);

/// One point, drawing from the caller's stream.
Vector sample_uniform_ball_point(std::size_t n, Rng& rng);

/// Bounded-density-ratio law on the unit ball: with probability
/// p* = min(1, (C - r^n)/(1 - r^n)) a point lands uniformly in the sub-ball
/// of radius r (a density spike at the permitted cap C/(r^n V_n)), otherwise
/// uniformly in the whole ball. C = 1, r = 1 is the plain uniform law.
/// Accepts any C > 0; C below r^n would need a negative spike and is
/// rejected.
Matrix sample_bounded_ratio(std::size_t n, std::size_t count, double C,
                            double r, std::uint64_t seed);

Vector sample_bounded_ratio_point(std::size_t n, double C, double r, Rng& rng);

/// Mixture weight p* used by sample_bounded_ratio.
double bounded_ratio_spike_weight(std::size_t n, double C, double r);

struct GranuleUniverseSpec {
  enum class Shape : std::uint8_t { Sphere, Ellipsoid, Gaussian };
  enum class CenterLaw : std::uint8_t { UniformBall, BoundedRatio };

  std::size_t n = 2;
  std::size_t count = 0;
  Shape shape = Shape::Sphere;
  double sphere_radius = 0.1;
  /// Semi-axis envelope d_1 > d_2 > ... for ellipsoid/gaussian shapes;
  /// must provide at least n terms.
  std::vector<double> cap_sequence;
  CenterLaw center_law = CenterLaw::UniformBall;
  double density_C = 1.0;
  double density_r = 1.0;
  std::uint64_t seed = 0;
};

/// Granules with centers drawn by the center law. Sphere granules carry no
/// explicit axes (residual_bound = radius). Ellipsoid and gaussian granules
/// get a full Haar-random orthonormal frame and semi-axes drawn uniformly
/// from (0, d_i], sorted decreasing (sorting keeps a_i <= d_i). Gaussian
/// granules reuse the same geometry; the sampler treats the semi-axes as
/// standard deviations along the axes.
std::vector<Ellipsoid> generate_granules(const GranuleUniverseSpec& spec);

/// Labeled Gaussian clusters: centers uniform in the unit ball, isotropic
/// spread, labels one per class.
DataMatrix generate_labeled_clusters(std::size_t n, std::size_t classes,
                                     std::size_t clusters_per_class,
                                     std::size_t points_per_cluster,
                                     double spread, std::uint64_t seed);

}  // namespace granular
