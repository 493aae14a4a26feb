#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace granular {

/// Cardinality bound kept in log space: the geometric-progression bounds
/// overflow double well before n = 10^4, the log10 never does.
struct Bound {
  double log10_value;

  double value() const;  // +inf once past double range
  /// Decimal rendering with the given significant digits, e.g. "6.86e13".
  std::string format(int significant_digits = 3) const;
};

/// Largest |Y| such that a random point with density ratio capped by C/r^n
/// in the unit ball is Fisher-separable from Y with probability > 1-delta:
///   delta * (2 r alpha)^n / C.
/// Requires 1 >= alpha > 1/2, 1 > r > 1/(2 alpha), 1 > delta > 0, C > 0.
Bound theorem1_bound(std::size_t n, double alpha, double r, double C,
                     double delta);

/// Set self-separability version: sqrt(delta/C) * (2 r alpha)^(n/2).
Bound corollary1_bound(std::size_t n, double alpha, double r, double C,
                       double delta);

/// Spherical-granule version with the inflated excluded ball, radius
/// xi = 1/(2 alpha) + R(1 + 1/alpha):  (delta/C) * (r/xi)^n.
/// Requires xi < r < 1.
Bound theorem2_bound(std::size_t n, double alpha, double R, double r, double C,
                     double delta);

/// sqrt(delta/C) * (r/xi)^(n/2).
Bound corollary2_bound(std::size_t n, double alpha, double R, double r,
                       double C, double delta);

/// Spherical-cap estimate: P((x,e) >= eps) <= 1/2 * Crho * (1-eps^2)^(n/2)
/// for any density bounded by rho_max with Crho = rho_max * V_n(B_n).
double lemma1_cap_bound(std::size_t n, double epsilon, double density_ratio);

/// Lower bound on the probability that a random point is quasiorthogonal to
/// N elliptic granules and has nearly extremal norm. `raw` may be negative
/// (vacuous) and is clamped at zero in `clamped`; both are reported because
/// a vacuous value still tells a user the dimension is too small.
struct TailBound {
  double raw;
  double clamped;
  double vartheta;    // quasiorthogonality threshold used
  double cap_radius;  // R = epsilon / (1 + sqrt(2))
  std::size_t k;      // tracked axis families: minimal k with d_{k+1} < R
};

/// Point vs N elliptic granules with semi-axis envelope d_sequence
/// (d_sequence[0] = d_1, strictly decreasing, must fall below R):
///   1 - Crho [ (1-varsigma)^n + N/2 (1-t^2)^{n/2}
///              + N sum_{i<=k} (1 - t^2/(k d_i^2))^{n/2} ],  t = R = eps/(1+sqrt 2).
/// Sum terms with t/(sqrt(k) d_i) >= 1 describe impossible events and
/// contribute exactly zero.
TailBound theorem3_probability(std::size_t n, std::size_t N,
                               const std::vector<double>& d_sequence,
                               double epsilon, double varsigma,
                               double density_ratio);

/// Random granule vs N elliptic granules; same structure with
/// t = min(varsigma, eps/(1+sqrt 2)), leading term (1-t)^n, and N+1 tracked
/// axis families:
///   1 - Crho [ (1-t)^n + N/2 (1-t^2)^{n/2}
///              + (N+1) sum_{i<=k} (1 - t^2/(k d_i^2))^{n/2} ].
TailBound theorem4_probability(std::size_t n, std::size_t N,
                               const std::vector<double>& d_sequence,
                               double epsilon, double varsigma,
                               double density_ratio);

/// d_i = lead * decay^i for i = 1..count (d_sequence[0] = lead * decay).
std::vector<double> geometric_caps(double lead, double decay,
                                   std::size_t count);

}  // namespace granular
