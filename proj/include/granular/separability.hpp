#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "granular/types.hpp"

namespace granular {

/// alpha (x,x) >= (x,y): x sits on the far side of the discriminant
/// hyperplane orthogonal to x at offset alpha||x||^2.
bool fisher_separable(const Vector& x, const Vector& y, double alpha);

struct PairViolation {
  Eigen::Index x;
  Eigen::Index y;
};

struct SetSeparabilityResult {
  double fraction;  // separable ordered pairs / all ordered pairs
  std::vector<PairViolation> violations;  // capped
  std::size_t violation_count = 0;        // uncapped tally
};

/// Evaluates the Fisher test over all ordered pairs x != y of the set.
/// The violation list is capped (default 1000) to bound memory when a set
/// fails densely; violation_count keeps the true tally.
SetSeparabilityResult set_fisher_separability(const DataMatrix& points,
                                              double alpha,
                                              std::size_t max_violations = 1000);

struct Ball {
  Vector center;
  double radius;
};

/// Centers x that fail the Fisher test against y form exactly the open ball
/// centered at y/(2 alpha) with radius ||y||/(2 alpha).
Ball excluded_ball(const Vector& y, double alpha);

/// xi = 1/(2 alpha) + R (1 + 1/alpha): upper bound on the excluded-ball
/// radius once points are inflated to spherical granules of radius R.
/// Granule separation statements need xi < 1.
double granule_xi(double alpha, double R);

/// Sufficient condition for two radius-R granules centered at x and y to
/// pass the Fisher test pointwise: x outside the inflated excluded ball
/// ||x - y/(2a)|| >= ||y||/(2a) + R(1 + 1/a). R = 0 reduces to the point test.
bool sphere_granules_separable(const Vector& x, const Vector& y, double R,
                               double alpha);

/// Separation from a convex hull: the half-space test passes for every
/// point of the hull iff it passes for every vertex.
bool polytope_fisher_separable(const Vector& x, const DataMatrix& vertices,
                               double alpha);

/// Granule with k explicitly retained principal axes. Unlisted axes (when
/// axes.rows() < dimension) have semi-axes bounded by residual_bound.
/// cap_sequence optionally records the envelope d_1 > d_2 > ... the
/// semi-axes were drawn under.
struct Ellipsoid {
  Vector center;
  Matrix axes;       // k x n orthonormal rows
  Vector semi_axes;  // k, non-increasing, positive
  double residual_bound = 0.0;
  std::vector<double> cap_sequence;

  Eigen::Index dim() const { return center.size(); }
  Eigen::Index listed_axes() const { return axes.rows(); }
  void validate() const;

  /// Membership test; only meaningful with a full axis list.
  bool contains(const Vector& point, double tol = 1e-12) const;
};

struct SupportResult {
  double value;
  Vector argmax;   // attains `value` when upper_bound is false
  bool upper_bound;  // true when unlisted axes were bounded by residual_bound
};

/// max (x, z') over the ellipsoid: (x,z) + sqrt(sum_i a_i^2 (x,e_i)^2) with
/// the maximizer z'_i = z_i + a_i^2 cos(alpha_i)/sqrt(...) in axis
/// coordinates. With a partial axis list the unlisted contribution is
/// bounded through residual_bound and the value is an upper estimate.
SupportResult ellipsoid_support_max(const Vector& x, const Ellipsoid& g);

}  // namespace granular
