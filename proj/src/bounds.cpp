#include "granular/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "granular/errors.hpp"

namespace granular {

namespace {

constexpr double kSqrt2Plus1 = 2.414213562373095048801688724209698;

void require(bool ok, const char* inequality, double got) {
  if (!ok)
    throw ParameterOutOfRange(std::string("violated: ") + inequality +
                              " (got " + std::to_string(got) + ")");
}

void check_point_theorem_params(double alpha, double r, double C,
                                double delta) {
  require(alpha > 0.5 && alpha <= 1.0, "1 >= alpha > 1/2", alpha);
  require(r > 1.0 / (2.0 * alpha) && r < 1.0, "1 > r > 1/(2 alpha)", r);
  require(delta > 0.0 && delta < 1.0, "1 > delta > 0", delta);
  require(C > 0.0, "C > 0", C);
}

double xi_checked(double alpha, double R, double r) {
  require(alpha > 0.0 && alpha <= 1.0, "1 >= alpha > 0", alpha);
  require(R >= 0.0, "R >= 0", R);
  const double xi = 1.0 / (2.0 * alpha) + R * (1.0 + 1.0 / alpha);
  require(r > xi && r < 1.0, "1 > r > xi", r);
  return xi;
}

// (1 - q)^(n/2) with impossible events (q >= 1) contributing zero.
double half_power(double q, std::size_t n) {
  if (q >= 1.0) return 0.0;
  return std::exp(0.5 * static_cast<double>(n) * std::log1p(-q));
}

}  // namespace

double Bound::value() const { return std::pow(10.0, log10_value); }

std::string Bound::format(int significant_digits) const {
  if (significant_digits < 1) significant_digits = 1;
  double exponent = std::floor(log10_value);
  double mantissa = std::pow(10.0, log10_value - exponent);
  // Rounding can push the mantissa to 10.0; renormalize.
  const double scale = std::pow(10.0, significant_digits - 1);
  mantissa = std::round(mantissa * scale) / scale;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buffer[64];
  if (exponent >= -3 && exponent < static_cast<double>(significant_digits)) {
    std::snprintf(buffer, sizeof(buffer), "%.*g",
                  significant_digits, mantissa * std::pow(10.0, exponent));
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.*fe%d", significant_digits - 1,
                  mantissa, static_cast<int>(exponent));
  }
  return buffer;
}

Bound theorem1_bound(std::size_t n, double alpha, double r, double C,
                     double delta) {
  check_point_theorem_params(alpha, r, C, delta);
  return {std::log10(delta) - std::log10(C) +
          static_cast<double>(n) * std::log10(2.0 * r * alpha)};
}

Bound corollary1_bound(std::size_t n, double alpha, double r, double C,
                       double delta) {
  check_point_theorem_params(alpha, r, C, delta);
  return {0.5 * (std::log10(delta) - std::log10(C)) +
          0.5 * static_cast<double>(n) * std::log10(2.0 * r * alpha)};
}

Bound theorem2_bound(std::size_t n, double alpha, double R, double r, double C,
                     double delta) {
  require(delta > 0.0 && delta < 1.0, "1 > delta > 0", delta);
  require(C > 0.0, "C > 0", C);
  const double xi = xi_checked(alpha, R, r);
  return {std::log10(delta) - std::log10(C) +
          static_cast<double>(n) * std::log10(r / xi)};
}

Bound corollary2_bound(std::size_t n, double alpha, double R, double r,
                       double C, double delta) {
  require(delta > 0.0 && delta < 1.0, "1 > delta > 0", delta);
  require(C > 0.0, "C > 0", C);
  const double xi = xi_checked(alpha, R, r);
  return {0.5 * (std::log10(delta) - std::log10(C)) +
          0.5 * static_cast<double>(n) * std::log10(r / xi)};
}

double lemma1_cap_bound(std::size_t n, double epsilon, double density_ratio) {
  require(epsilon > 0.0 && epsilon < 1.0, "0 < epsilon < 1", epsilon);
  require(density_ratio >= 1.0, "Crho >= 1", density_ratio);
  return 0.5 * density_ratio * half_power(epsilon * epsilon, n);
}

namespace {

TailBound granule_tail_bound(std::size_t n, std::size_t N,
                             const std::vector<double>& d_sequence,
                             double epsilon, double varsigma,
                             double density_ratio, bool random_granule) {
  require(epsilon > 0.0, "epsilon > 0", epsilon);
  require(varsigma > 0.0, "varsigma > 0", varsigma);
  require(density_ratio >= 1.0, "Crho >= 1", density_ratio);
  if (d_sequence.empty())
    throw ParameterOutOfRange("cap sequence must not be empty");
  for (std::size_t i = 0; i + 1 < d_sequence.size(); ++i)
    if (d_sequence[i + 1] >= d_sequence[i])
      throw ParameterOutOfRange("cap sequence must be strictly decreasing");
  if (d_sequence.front() <= 0.0)
    throw ParameterOutOfRange("cap sequence must be positive");

  TailBound out{};
  out.cap_radius = epsilon / kSqrt2Plus1;
  out.vartheta =
      random_granule ? std::min(varsigma, out.cap_radius) : out.cap_radius;

  // Minimal k with d_{k+1} < R; axis families beyond the dimension cannot
  // exist, so k is clamped to n.
  std::size_t k = d_sequence.size();
  bool found = false;
  for (std::size_t i = 0; i < d_sequence.size(); ++i) {
    if (d_sequence[i] < out.cap_radius) {
      k = i;  // d_sequence[i] = d_{i+1}
      found = true;
      break;
    }
  }
  if (!found)
    throw ParameterOutOfRange(
        "cap sequence never falls below epsilon/(1+sqrt 2) = " +
        std::to_string(out.cap_radius) + "; supply more terms");
  k = std::min(k, n);
  out.k = k;

  const double t = out.vartheta;
  double bracket =
      random_granule
          ? (t >= 1.0 ? 0.0
                      : std::exp(static_cast<double>(n) * std::log1p(-t)))
          : (varsigma >= 1.0
                 ? 0.0
                 : std::exp(static_cast<double>(n) * std::log1p(-varsigma)));
  bracket += 0.5 * static_cast<double>(N) * half_power(t * t, n);

  double axis_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = d_sequence[i];
    axis_sum += half_power(t * t / (static_cast<double>(k) * d * d), n);
  }
  bracket += static_cast<double>(random_granule ? N + 1 : N) * axis_sum;

  out.raw = 1.0 - density_ratio * bracket;
  out.clamped = std::max(out.raw, 0.0);
  return out;
}

}  // namespace

TailBound theorem3_probability(std::size_t n, std::size_t N,
                               const std::vector<double>& d_sequence,
                               double epsilon, double varsigma,
                               double density_ratio) {
  return granule_tail_bound(n, N, d_sequence, epsilon, varsigma, density_ratio,
                            /*random_granule=*/false);
}

TailBound theorem4_probability(std::size_t n, std::size_t N,
                               const std::vector<double>& d_sequence,
                               double epsilon, double varsigma,
                               double density_ratio) {
  return granule_tail_bound(n, N, d_sequence, epsilon, varsigma, density_ratio,
                            /*random_granule=*/true);
}

std::vector<double> geometric_caps(double lead, double decay,
                                   std::size_t count) {
  if (!(lead > 0.0) || !(decay > 0.0) || decay >= 1.0)
    throw ParameterOutOfRange("geometric caps need lead > 0 and 0 < decay < 1");
  std::vector<double> caps(count);
  double value = lead;
  for (std::size_t i = 0; i < count; ++i) {
    value *= decay;
    caps[i] = value;
  }
  return caps;
}

}  // namespace granular
