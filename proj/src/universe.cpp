#include "granular/universe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "granular/errors.hpp"
#include "granular/linalg.hpp"

namespace granular {

namespace {

Vector gaussian_vector(std::size_t n, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.gaussian();
  return v;
}

Vector uniform_in_ball(std::size_t n, double radius, Rng& rng) {
  Vector direction = gaussian_vector(n, rng);
  double norm = direction.norm();
  while (norm == 0.0) {  // astronomically unlikely; redraw keeps determinism
    direction = gaussian_vector(n, rng);
    norm = direction.norm();
  }
  const double u = rng.uniform_open01();
  const double scale =
      radius * std::pow(u, 1.0 / static_cast<double>(n)) / norm;
  return direction * scale;
}

}  // namespace

Vector sample_uniform_ball_point(std::size_t n, Rng& rng) {
  return uniform_in_ball(n, 1.0, rng);
}

Matrix sample_uniform_ball(std::size_t n, std::size_t count,
                           std::uint64_t seed) {
  if (n < 1) throw ParameterOutOfRange("dimension must be >= 1");
  Matrix points(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, stream::kPointSet, i);
    points.row(static_cast<Eigen::Index>(i)) =
        sample_uniform_ball_point(n, rng).transpose();
  }
  return points;
}

double bounded_ratio_spike_weight(std::size_t n, double C, double r) {
  if (!(C > 0.0)) throw ParameterOutOfRange("density constant C must be > 0");
  if (!(r > 0.0) || r > 1.0)
    throw ParameterOutOfRange("density radius r must lie in (0, 1]");
  if (r == 1.0) return 0.0;
  const double r_pow = std::pow(r, static_cast<double>(n));
  if (C < r_pow)
    throw ParameterOutOfRange(
        "C < r^n leaves no admissible mixture (C = " + std::to_string(C) + ")");
  return std::min(1.0, (C - r_pow) / (1.0 - r_pow));
}

Vector sample_bounded_ratio_point(std::size_t n, double C, double r,
                                  Rng& rng) {
  const double spike = bounded_ratio_spike_weight(n, C, r);
  const double coin = rng.uniform01();
  return uniform_in_ball(n, coin < spike ? r : 1.0, rng);
}

Matrix sample_bounded_ratio(std::size_t n, std::size_t count, double C,
                            double r, std::uint64_t seed) {
  if (n < 1) throw ParameterOutOfRange("dimension must be >= 1");
  bounded_ratio_spike_weight(n, C, r);  // validate once up front
  Matrix points(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, stream::kPointSet, i);
    points.row(static_cast<Eigen::Index>(i)) =
        sample_bounded_ratio_point(n, C, r, rng).transpose();
  }
  return points;
}

std::vector<Ellipsoid> generate_granules(const GranuleUniverseSpec& spec) {
  if (spec.n < 1) throw ParameterOutOfRange("dimension must be >= 1");
  const bool needs_caps = spec.shape != GranuleUniverseSpec::Shape::Sphere;
  if (needs_caps) {
    if (spec.cap_sequence.size() < spec.n)
      throw ParameterOutOfRange(
          "cap sequence must cover the dimension (need " +
          std::to_string(spec.n) + " terms, got " +
          std::to_string(spec.cap_sequence.size()) + ")");
    for (std::size_t i = 0; i + 1 < spec.n; ++i)
      if (spec.cap_sequence[i + 1] >= spec.cap_sequence[i])
        throw ParameterOutOfRange("cap sequence must be strictly decreasing");
    if (spec.cap_sequence.front() <= 0.0)
      throw ParameterOutOfRange("cap sequence must be positive");
  }
  if (spec.shape == GranuleUniverseSpec::Shape::Sphere &&
      spec.sphere_radius < 0.0)
    throw ParameterOutOfRange("sphere radius must be >= 0");

  std::vector<Ellipsoid> granules;
  granules.reserve(spec.count);
  for (std::size_t g = 0; g < spec.count; ++g) {
    Rng rng = Rng::derive(spec.seed, stream::kGranule, g);
    Ellipsoid granule;
    granule.center =
        spec.center_law == GranuleUniverseSpec::CenterLaw::UniformBall
            ? sample_uniform_ball_point(spec.n, rng)
            : sample_bounded_ratio_point(spec.n, spec.density_C,
                                         spec.density_r, rng);
    if (spec.shape == GranuleUniverseSpec::Shape::Sphere) {
      granule.axes.resize(0, static_cast<Eigen::Index>(spec.n));
      granule.semi_axes.resize(0);
      granule.residual_bound = spec.sphere_radius;
    } else {
      granule.axes = random_orthonormal_rows(spec.n, spec.n, rng);
      Vector semi(static_cast<Eigen::Index>(spec.n));
      for (std::size_t i = 0; i < spec.n; ++i)
        semi[static_cast<Eigen::Index>(i)] =
            rng.uniform_open01() * spec.cap_sequence[i];
      std::sort(semi.data(), semi.data() + semi.size(), std::greater<>());
      granule.semi_axes = semi;
      granule.residual_bound = 0.0;
      granule.cap_sequence.assign(spec.cap_sequence.begin(),
                                  spec.cap_sequence.begin() +
                                      static_cast<long>(spec.n));
    }
    granules.push_back(std::move(granule));
  }
  return granules;
}

DataMatrix generate_labeled_clusters(std::size_t n, std::size_t classes,
                                     std::size_t clusters_per_class,
                                     std::size_t points_per_cluster,
                                     double spread, std::uint64_t seed) {
  if (n < 1 || classes < 1 || clusters_per_class < 1 || points_per_cluster < 1)
    throw ParameterOutOfRange("all cluster generator counts must be >= 1");
  if (spread < 0.0) throw ParameterOutOfRange("spread must be >= 0");

  const std::size_t total = classes * clusters_per_class * points_per_cluster;
  DataMatrix data;
  data.values.resize(static_cast<Eigen::Index>(total),
                     static_cast<Eigen::Index>(n));
  std::vector<int> labels(total);

  Eigen::Index row = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t cl = 0; cl < clusters_per_class; ++cl) {
      const std::uint64_t cluster_id = c * clusters_per_class + cl;
      Rng center_rng = Rng::derive(seed, stream::kClusterCenter, cluster_id);
      const Vector center = sample_uniform_ball_point(n, center_rng);
      for (std::size_t p = 0; p < points_per_cluster; ++p) {
        Rng point_rng = Rng::derive(
            seed, stream::kClusterPoint,
            cluster_id * points_per_cluster + p);
        data.values.row(row) =
            (center + spread * gaussian_vector(n, point_rng)).transpose();
        labels[static_cast<std::size_t>(row)] = static_cast<int>(c);
        ++row;
      }
    }
  }
  data.labels = std::move(labels);
  return data;
}

}  // namespace granular
