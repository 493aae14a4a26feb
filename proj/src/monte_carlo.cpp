#include "granular/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "granular/bounds.hpp"
#include "granular/errors.hpp"
#include "granular/separability.hpp"
#include "granular/universe.hpp"

namespace granular {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

Vector draw_point(const McParams& p, Rng& rng) {
  return sample_bounded_ratio_point(p.n, p.density_C, p.density_r, rng);
}

// Success when the random point passes the Fisher test against every
// obstacle point.
bool trial_point_vs_points(const McParams& p, const Matrix& obstacles,
                           Rng& rng) {
  const Vector x = draw_point(p, rng);
  const double lhs = p.alpha * x.squaredNorm();
  for (Eigen::Index i = 0; i < obstacles.rows(); ++i)
    if (lhs < x.dot(obstacles.row(i))) return false;
  return true;
}

bool trial_point_vs_spheres(const McParams& p, const Matrix& centers,
                            Rng& rng) {
  const Vector x = draw_point(p, rng);
  for (Eigen::Index i = 0; i < centers.rows(); ++i)
    if (!sphere_granules_separable(x, centers.row(i), p.granule_radius,
                                   p.alpha))
      return false;
  return true;
}

// Quasiorthogonality event: large norm and every granule support below
// epsilon.
bool trial_point_vs_ellipsoids(const McParams& p,
                               const std::vector<Ellipsoid>& granules,
                               Rng& rng) {
  const Vector x = draw_point(p, rng);
  if (x.squaredNorm() <= 1.0 - p.varsigma) return false;
  for (const Ellipsoid& g : granules)
    if (ellipsoid_support_max(x, g).value >= p.epsilon) return false;
  return true;
}

// Own-granule support in direction x must stay below epsilon as well, so
// the whole random granule is carried along with its center.
bool trial_random_granule(const McParams& p,
                          const std::vector<Ellipsoid>& granules,
                          const Ellipsoid& own_shape, Rng& rng) {
  const Vector x = draw_point(p, rng);
  if (x.squaredNorm() < 1.0 - p.varsigma) return false;
  const Vector coords = own_shape.axes * x;
  double own = 0.0;
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    own += own_shape.semi_axes[i] * own_shape.semi_axes[i] * coords[i] *
           coords[i];
  if (std::sqrt(own) > p.epsilon) return false;
  for (const Ellipsoid& g : granules)
    if (ellipsoid_support_max(x, g).value > p.epsilon) return false;
  return true;
}

Vector sample_gaussian_granule(const Ellipsoid& g, const Vector& center,
                               Rng& rng) {
  Vector point = center;
  for (Eigen::Index i = 0; i < g.semi_axes.size(); ++i)
    point += g.semi_axes[i] * rng.gaussian() * g.axes.row(i).transpose();
  return point;
}

// Soft-cluster variant: sampled witness points instead of whole-granule
// support maxima.
bool trial_logconcave(const McParams& p, const std::vector<Ellipsoid>& granules,
                      const Ellipsoid& own_shape, Rng& rng) {
  const Vector x = draw_point(p, rng);
  if (x.squaredNorm() < 1.0 - p.varsigma) return false;
  const Ellipsoid& mix = granules[rng.uniform_index(granules.size())];
  const Vector z_prime = sample_gaussian_granule(mix, mix.center, rng);
  const Vector x_prime = sample_gaussian_granule(own_shape, x, rng);
  if (x.dot(z_prime) > p.epsilon) return false;
  return x.dot(x_prime) >= x.squaredNorm() - p.epsilon;
}

void validate_params(McScenario scenario, const McParams& p,
                     std::uint64_t trials) {
  if (trials < 1) throw ParameterOutOfRange("trials must be >= 1");
  if (p.n < 1) throw ParameterOutOfRange("dimension must be >= 1");
  switch (scenario) {
    case McScenario::PointVsPoints:
    case McScenario::PointVsSphereGranules:
      if (!(p.alpha > 0.0) || p.alpha > 1.0)
        throw ParameterOutOfRange("alpha must lie in (0, 1]");
      if (scenario == McScenario::PointVsSphereGranules &&
          p.granule_radius < 0.0)
        throw ParameterOutOfRange("granule radius must be >= 0");
      break;
    default:
      if (!(p.epsilon > 0.0)) throw ParameterOutOfRange("epsilon must be > 0");
      if (!(p.varsigma > 0.0))
        throw ParameterOutOfRange("varsigma must be > 0");
      if (p.cap_sequence.size() < p.n)
        throw ParameterOutOfRange("cap sequence must provide n terms");
      if (scenario == McScenario::LogconcaveGranules && p.set_size < 1)
        throw ParameterOutOfRange("log-concave scenario needs granules");
      break;
  }
}

// Closed-form companion bound where one exists, clamped into [0, 1].
std::optional<double> companion_bound(McScenario scenario, const McParams& p) {
  const double n = static_cast<double>(p.n);
  const double count = static_cast<double>(p.set_size);
  switch (scenario) {
    case McScenario::PointVsPoints: {
      // union bound over excluded balls of radius <= 1/(2 alpha)
      const double log_term = std::log(count) + std::log(p.density_C) -
                              n * std::log(2.0 * p.density_r * p.alpha);
      return std::clamp(1.0 - std::exp(log_term), 0.0, 1.0);
    }
    case McScenario::PointVsSphereGranules: {
      const double xi = granule_xi(p.alpha, p.granule_radius);
      const double log_term = std::log(count) + std::log(p.density_C) +
                              n * std::log(xi / p.density_r);
      return std::clamp(1.0 - std::exp(log_term), 0.0, 1.0);
    }
    case McScenario::PointVsEllipsoids:
      return theorem3_probability(p.n, p.set_size, p.cap_sequence, p.epsilon,
                                  p.varsigma, p.density_C / std::pow(p.density_r, n))
          .clamped;
    case McScenario::RandomGranuleVsEllipsoids:
      return theorem4_probability(p.n, p.set_size, p.cap_sequence, p.epsilon,
                                  p.varsigma, p.density_C / std::pow(p.density_r, n))
          .clamped;
    case McScenario::LogconcaveGranules:
      return std::nullopt;  // external constants unknown; qualitative only
  }
  return std::nullopt;
}

}  // namespace

const char* scenario_name(McScenario s) {
  switch (s) {
    case McScenario::PointVsPoints: return "point_vs_points";
    case McScenario::PointVsSphereGranules: return "point_vs_sphere_granules";
    case McScenario::PointVsEllipsoids: return "point_vs_ellipsoids";
    case McScenario::RandomGranuleVsEllipsoids:
      return "random_granule_vs_ellipsoids";
    case McScenario::LogconcaveGranules: return "logconcave_granules";
  }
  return "?";
}

McScenario scenario_from_name(const std::string& name) {
  for (McScenario s :
       {McScenario::PointVsPoints, McScenario::PointVsSphereGranules,
        McScenario::PointVsEllipsoids, McScenario::RandomGranuleVsEllipsoids,
        McScenario::LogconcaveGranules})
    if (name == scenario_name(s)) return s;
  throw ParameterOutOfRange("unknown scenario '" + name + "'");
}

SeparabilityReport monte_carlo_separation(McScenario scenario,
                                          const McParams& params,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          std::size_t threads) {
  validate_params(scenario, params, trials);

  // Fixed obstacle set: the statements hold for every such set, the
  // randomness lives in the per-trial point.
  Matrix obstacle_points;
  std::vector<Ellipsoid> granules;
  Ellipsoid own_shape;
  switch (scenario) {
    case McScenario::PointVsPoints:
      obstacle_points = sample_bounded_ratio(params.n, params.set_size,
                                             params.density_C,
                                             params.density_r, seed);
      break;
    case McScenario::PointVsSphereGranules: {
      GranuleUniverseSpec spec;
      spec.n = params.n;
      spec.count = params.set_size;
      spec.shape = GranuleUniverseSpec::Shape::Sphere;
      spec.sphere_radius = params.granule_radius;
      spec.density_C = params.density_C;
      spec.density_r = params.density_r;
      spec.center_law = GranuleUniverseSpec::CenterLaw::BoundedRatio;
      spec.seed = seed;
      const auto spheres = generate_granules(spec);
      obstacle_points.resize(static_cast<Eigen::Index>(spheres.size()),
                             static_cast<Eigen::Index>(params.n));
      for (std::size_t i = 0; i < spheres.size(); ++i)
        obstacle_points.row(static_cast<Eigen::Index>(i)) =
            spheres[i].center.transpose();
      break;
    }
    default: {
      GranuleUniverseSpec spec;
      spec.n = params.n;
      spec.count = params.set_size;
      spec.shape = scenario == McScenario::LogconcaveGranules
                       ? GranuleUniverseSpec::Shape::Gaussian
                       : GranuleUniverseSpec::Shape::Ellipsoid;
      spec.cap_sequence = params.cap_sequence;
      spec.seed = seed;
      granules = generate_granules(spec);
      if (scenario != McScenario::PointVsEllipsoids) {
        // Shape of the roaming granule: fixed axes, random center per trial.
        GranuleUniverseSpec own = spec;
        own.count = 1;
        own.seed = Rng::derive(seed, stream::kOwnGranule, 0).next_u64();
        own_shape = generate_granules(own)[0];
      }
      break;
    }
  }

  auto run_trial = [&](std::uint64_t t) -> bool {
    Rng rng = Rng::derive(seed, stream::kTrial, t);
    switch (scenario) {
      case McScenario::PointVsPoints:
        return trial_point_vs_points(params, obstacle_points, rng);
      case McScenario::PointVsSphereGranules:
        return trial_point_vs_spheres(params, obstacle_points, rng);
      case McScenario::PointVsEllipsoids:
        return trial_point_vs_ellipsoids(params, granules, rng);
      case McScenario::RandomGranuleVsEllipsoids:
        return trial_random_granule(params, granules, own_shape, rng);
      case McScenario::LogconcaveGranules:
        return trial_logconcave(params, granules, own_shape, rng);
    }
    return false;
  };

  std::vector<std::uint8_t> outcome(trials, 0);
  if (threads <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) outcome[t] = run_trial(t) ? 1 : 0;
  } else {
    const std::size_t hw = std::thread::hardware_concurrency();
    const std::size_t workers =
        std::max<std::size_t>(1, std::min(threads, hw > 0 ? hw : threads));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w, workers] {
        for (std::uint64_t t = w; t < trials; t += workers)
          outcome[t] = run_trial(t) ? 1 : 0;
      });
    for (auto& th : pool) th.join();
  }

  SeparabilityReport report;
  report.scenario = scenario_name(scenario);
  report.trials = trials;
  for (std::uint8_t s : outcome) report.successes += s;
  report.empirical_frequency =
      static_cast<double>(report.successes) / static_cast<double>(trials);
  report.theoretical_lower_bound = companion_bound(scenario, params);
  const double p_hat = report.empirical_frequency;
  report.confidence_radius =
      kZ99 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
  report.seed = seed;
  return report;
}

}  // namespace granular
