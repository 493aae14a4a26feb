#include "granular/separability.hpp"

#include <cmath>
#include <string>

#include "granular/errors.hpp"

namespace granular {

namespace {

void check_same_dim(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("vectors of dimension " + std::to_string(x.size()) +
                            " and " + std::to_string(y.size()));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ParameterOutOfRange("alpha must lie in (0, 1], got " +
                              std::to_string(alpha));
}

}  // namespace

bool fisher_separable(const Vector& x, const Vector& y, double alpha) {
  check_same_dim(x, y);
  check_alpha(alpha);
  return alpha * x.squaredNorm() >= x.dot(y);
}

SetSeparabilityResult set_fisher_separability(const DataMatrix& points,
                                              double alpha,
                                              std::size_t max_violations) {
  points.validate();
  check_alpha(alpha);
  const Eigen::Index n = points.rows();
  if (n < 2) throw InsufficientData("need at least two points");

  // One Gram computation instead of N^2 vector dots: the pair (i, j) is
  // separable iff alpha * G_ii >= G_ij.
  const Matrix gram = points.values * points.values.transpose();
  SetSeparabilityResult result;
  std::size_t separable = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (alpha * gram(i, i) >= gram(i, j)) {
        ++separable;
      } else {
        ++result.violation_count;
        if (result.violations.size() < max_violations)
          result.violations.push_back({i, j});
      }
    }
  }
  const std::size_t total = static_cast<std::size_t>(n) *
                            static_cast<std::size_t>(n - 1);
  result.fraction = static_cast<double>(separable) / static_cast<double>(total);
  return result;
}

Ball excluded_ball(const Vector& y, double alpha) {
  if (!(alpha > 0.0))
    throw ParameterOutOfRange("alpha must be positive");
  return {y / (2.0 * alpha), y.norm() / (2.0 * alpha)};
}

double granule_xi(double alpha, double R) {
  check_alpha(alpha);
  if (R < 0.0) throw ParameterOutOfRange("granule radius R must be >= 0");
  return 1.0 / (2.0 * alpha) + R * (1.0 + 1.0 / alpha);
}

bool sphere_granules_separable(const Vector& x, const Vector& y, double R,
                               double alpha) {
  check_same_dim(x, y);
  check_alpha(alpha);
  if (R < 0.0) throw ParameterOutOfRange("granule radius R must be >= 0");
  const double inflated_radius =
      y.norm() / (2.0 * alpha) + R * (1.0 + 1.0 / alpha);
  return (x - y / (2.0 * alpha)).norm() >= inflated_radius;
}

bool polytope_fisher_separable(const Vector& x, const DataMatrix& vertices,
                               double alpha) {
  vertices.validate();
  if (vertices.cols() != x.size())
    throw DimensionMismatch("vertex dimension does not match x");
  check_alpha(alpha);
  const double lhs = alpha * x.squaredNorm();
  for (Eigen::Index v = 0; v < vertices.rows(); ++v)
    if (lhs < x.dot(vertices.values.row(v))) return false;
  return true;
}

void Ellipsoid::validate() const {
  if (center.size() < 1) throw ParameterOutOfRange("ellipsoid needs a center");
  if (axes.rows() != semi_axes.size())
    throw DimensionMismatch("axis count differs from semi-axis count");
  if (axes.rows() > 0 && axes.cols() != center.size())
    throw DimensionMismatch("axis dimension differs from center dimension");
  if (residual_bound < 0.0)
    throw ParameterOutOfRange("residual bound must be >= 0");
  for (Eigen::Index i = 0; i < semi_axes.size(); ++i) {
    if (!(semi_axes[i] > 0.0))
      throw ParameterOutOfRange("semi-axes must be positive");
    if (i > 0 && semi_axes[i] > semi_axes[i - 1] + 1e-15)
      throw ParameterOutOfRange("semi-axes must be non-increasing");
  }
  if (!cap_sequence.empty()) {
    for (std::size_t i = 0; i + 1 < cap_sequence.size(); ++i)
      if (cap_sequence[i + 1] >= cap_sequence[i])
        throw ParameterOutOfRange("cap sequence must be strictly decreasing");
    for (Eigen::Index i = 0; i < semi_axes.size(); ++i)
      if (static_cast<std::size_t>(i) < cap_sequence.size() &&
          semi_axes[i] > cap_sequence[static_cast<std::size_t>(i)] + 1e-15)
        throw ParameterOutOfRange("semi-axis exceeds its cap");
  }
  if (axes.rows() > 0) {
    const Matrix gram = axes * axes.transpose();
    const double defect =
        (gram - Matrix::Identity(axes.rows(), axes.rows())).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
      throw ParameterOutOfRange("axes are not orthonormal within 1e-10");
  }
}

bool Ellipsoid::contains(const Vector& point, double tol) const {
  if (point.size() != dim())
    throw DimensionMismatch("point dimension does not match ellipsoid");
  const Vector delta = point - center;
  const Vector coords = axes * delta;
  double level = 0.0;
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    const double a = semi_axes[i];
    level += coords[i] * coords[i] / (a * a);
  }
  if (listed_axes() < dim()) {
    const double tail = delta.squaredNorm() - coords.squaredNorm();
    if (residual_bound <= 0.0) {
      if (tail > tol) return false;
    } else {
      level += tail / (residual_bound * residual_bound);
    }
  }
  return level <= 1.0 + tol;
}

SupportResult ellipsoid_support_max(const Vector& x, const Ellipsoid& g) {
  if (x.size() != g.dim())
    throw DimensionMismatch("direction dimension does not match ellipsoid");
  const double x_norm = x.norm();
  if (x_norm == 0.0) throw ZeroDirection("support direction must be nonzero");

  const Vector coords = g.axes * x;  // (x, e_i)
  double listed = 0.0;
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    listed += g.semi_axes[i] * g.semi_axes[i] * coords[i] * coords[i];

  const bool partial = g.listed_axes() < g.dim();
  double tail = 0.0;
  if (partial && g.residual_bound > 0.0) {
    const double residual_energy =
        std::max(0.0, x.squaredNorm() - coords.squaredNorm());
    tail = g.residual_bound * g.residual_bound * residual_energy;
  }

  SupportResult result;
  result.upper_bound = partial && g.residual_bound > 0.0;
  const double scale = std::sqrt(listed + tail);
  result.value = x.dot(g.center) + scale;

  // Maximizer over the listed axes; exact when the axis list is full.
  result.argmax = g.center;
  const double listed_scale = std::sqrt(listed);
  if (listed_scale > 0.0) {
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
      const double step =
          g.semi_axes[i] * g.semi_axes[i] * coords[i] / listed_scale;
      result.argmax += step * g.axes.row(i).transpose();
    }
  }
  return result;
}

}  // namespace granular
