#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "granular/bounds.hpp"
#include "granular/errors.hpp"
#include "granular/monte_carlo.hpp"
#include "granular/rng.hpp"
#include "granular/separability.hpp"
#include "granular/universe.hpp"

using namespace granular;

namespace {

// printed reference entry: value as published and one unit of its last
// printed digit
struct PrintedEntry {
  std::size_t n;
  double value;
  double ulp;
};

// The published growth base behind the granule table was rounded to four
// significant digits before exponentiation, so reproduction checks allow
// that drift (n * 1e-4 relative) on top of one printed ulp.
void check_table(const std::vector<PrintedEntry>& printed,
                 const std::vector<double>& computed, double base_drift) {
  REQUIRE(printed.size() == computed.size());
  for (std::size_t i = 0; i < printed.size(); ++i) {
    const double allowance =
        printed[i].ulp +
        base_drift * static_cast<double>(printed[i].n) * printed[i].value;
    INFO("n = ", printed[i].n, " computed = ", computed[i],
         " printed = ", printed[i].value);
    CHECK(std::abs(computed[i] - printed[i].value) <= allowance);
  }
}

}  // namespace

TEST_CASE("point-separation bound table") {
  const std::vector<PrintedEntry> printed = {
      {10, 0.38, 0.01},      {25, 91.0, 1.0},       {50, 8.28e5, 1e3},
      {100, 6.85e13, 1e11},  {150, 5.68e21, 1e19},  {200, 4.70e29, 1e27}};
  std::vector<double> computed;
  for (const auto& entry : printed)
    computed.push_back(theorem1_bound(entry.n, 0.8, 0.9, 1.0, 0.01).value());
  check_table(printed, computed, 0.0);
}

TEST_CASE("set-self-separation bound table") {
  const std::vector<PrintedEntry> printed = {
      {10, 0.61, 0.01},     {25, 9.5, 0.1},       {50, 910.0, 1.0},
      {100, 8.28e6, 1e4},   {150, 7.53e10, 1e8},  {200, 6.85e14, 1e12}};
  std::vector<double> computed;
  for (const auto& entry : printed)
    computed.push_back(corollary1_bound(entry.n, 0.8, 0.9, 1.0, 0.01).value());
  check_table(printed, computed, 0.0);
}

TEST_CASE("spherical-granule bound table") {
  const std::vector<PrintedEntry> printed = {{25, 0.55, 0.01},
                                             {50, 30.0, 1.0},
                                             {100, 9.26e4, 1e2},
                                             {150, 2.81e8, 1e6},
                                             {200, 8.58e11, 1e9}};
  std::vector<double> computed;
  for (const auto& entry : printed)
    computed.push_back(
        theorem2_bound(entry.n, 0.9, 0.1, 0.9, 1.0, 0.01).value());
  check_table(printed, computed, 1e-4);
}

TEST_CASE("bounds stay in log space up to n = 10^4") {
  const Bound huge = theorem1_bound(10000, 0.8, 0.9, 1.0, 0.01);
  CHECK(std::isfinite(huge.log10_value));
  CHECK(huge.log10_value == doctest::Approx(10000 * std::log10(1.44) - 2.0));
  const std::string text = huge.format();
  CHECK(text.find('e') != std::string::npos);
  CHECK(std::isinf(huge.value()));  // the decimal value itself overflows

  // geometric-progression property, exact in log space
  for (std::size_t n : {10, 100, 1000}) {
    const double step = theorem1_bound(n + 1, 0.8, 0.9, 1.0, 0.01).log10_value -
                        theorem1_bound(n, 0.8, 0.9, 1.0, 0.01).log10_value;
    CHECK(std::abs(step - std::log10(2.0 * 0.9 * 0.8)) <= 1e-12);
    const double step2 =
        theorem2_bound(n + 1, 0.9, 0.1, 0.9, 1.0, 0.01).log10_value -
        theorem2_bound(n, 0.9, 0.1, 0.9, 1.0, 0.01).log10_value;
    CHECK(std::abs(step2 - std::log10(0.9 / granule_xi(0.9, 0.1))) <= 1e-12);
  }
}

TEST_CASE("parameter violations name the broken inequality") {
  CHECK_THROWS_WITH_AS(theorem1_bound(10, 0.4, 0.9, 1.0, 0.01),
                       doctest::Contains("alpha"), ParameterOutOfRange);
  CHECK_THROWS_WITH_AS(theorem1_bound(10, 0.8, 0.5, 1.0, 0.01),
                       doctest::Contains("r >"), ParameterOutOfRange);
  CHECK_THROWS_WITH_AS(theorem1_bound(10, 0.8, 0.9, 1.0, 1.5),
                       doctest::Contains("delta"), ParameterOutOfRange);
  // theorem 2 additionally requires xi < r
  CHECK_THROWS_WITH_AS(theorem2_bound(10, 0.9, 0.3, 0.9, 1.0, 0.01),
                       doctest::Contains("xi"), ParameterOutOfRange);
}

TEST_CASE("corollary 2 reductions") {
  // n = 0: only the prefactor sqrt(delta / C) remains
  CHECK(corollary2_bound(0, 0.9, 0.1, 0.9, 1.0, 0.01).value() ==
        doctest::Approx(0.1).epsilon(1e-12));
  // delta = C: prefactor one
  CHECK(corollary2_bound(0, 0.9, 0.1, 0.9, 0.5, 0.5).value() ==
        doctest::Approx(1.0).epsilon(1e-12));
  // documented example value
  CHECK(corollary2_bound(100, 0.9, 0.1, 0.9, 1.0, 0.01).value() ==
        doctest::Approx(303.2469259523661).epsilon(1e-9));
}

TEST_CASE("spherical-cap bound value and Monte Carlo ceiling") {
  const double bound = lemma1_cap_bound(50, 0.3, 1.0);
  CHECK(bound == doctest::Approx(0.04731565019210214).epsilon(1e-12));
  CHECK(lemma1_cap_bound(50, 0.999999, 1.0) <= 1e-12);

  // empirical P((x, e) >= eps) for x uniform in the ball never beats it
  const std::size_t trials = 20000;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(424242, stream::kTrial, t);
    const Vector x = sample_uniform_ball_point(50, rng);
    if (x[0] >= 0.3) ++hits;
  }
  const double freq = static_cast<double>(hits) / static_cast<double>(trials);
  CHECK(freq <= bound);
  CHECK(freq >= bound / 50.0);
}

TEST_CASE("granule tail bounds: reductions and term structure") {
  const std::vector<double> caps = geometric_caps(0.9, 0.8, 60);

  // no granules: only the norm term remains
  const TailBound t3 = theorem3_probability(200, 0, caps, 0.4, 0.3, 1.0);
  CHECK(t3.raw ==
        doctest::Approx(1.0 - std::pow(0.7, 200.0)).epsilon(1e-12));
  CHECK(t3.vartheta == doctest::Approx(0.4 / (1.0 + std::sqrt(2.0))));

  const TailBound t4 = theorem4_probability(200, 0, caps, 0.4, 0.3, 1.0);
  // one axis family (the roaming granule) survives at N = 0
  double axis_sum = 0.0;
  const double t = t4.vartheta;
  for (std::size_t i = 0; i < t4.k; ++i) {
    const double q = t * t / (static_cast<double>(t4.k) * caps[i] * caps[i]);
    axis_sum += q >= 1.0 ? 0.0 : std::pow(1.0 - q, 100.0);
  }
  CHECK(t4.raw ==
        doctest::Approx(1.0 - (std::pow(1.0 - t, 200.0) + axis_sum))
            .epsilon(1e-10));

  // huge quasiorthogonality thresholds are impossible events: zero terms
  const std::vector<double> tiny_caps = {1e-3, 1e-4};
  const TailBound all_vanish =
      theorem3_probability(50, 10, tiny_caps, 0.4, 0.3, 1.0);
  CHECK(all_vanish.k == 0);  // d_1 already below the cap radius
  CHECK(all_vanish.raw ==
        doctest::Approx(1.0 - (std::pow(0.7, 50.0) +
                               5.0 * std::pow(1.0 - all_vanish.vartheta *
                                                        all_vanish.vartheta,
                                              25.0)))
            .epsilon(1e-12));

  CHECK_THROWS_AS(theorem3_probability(50, 10, {0.9, 0.8}, 0.4, 0.3, 1.0),
                  ParameterOutOfRange);  // never decays below the radius
}

TEST_CASE("granule tail bounds are non-decreasing in n") {
  const std::vector<double> caps = geometric_caps(0.9, 0.8, 60);
  double previous3 = -1e300, previous4 = -1e300;
  for (std::size_t n : {50, 100, 200, 400, 800, 1600}) {
    const double raw3 =
        theorem3_probability(n, 20, caps, 0.4, 0.3, 1.0).raw;
    const double raw4 =
        theorem4_probability(n, 20, caps, 0.4, 0.3, 1.0).raw;
    CHECK(raw3 >= previous3);
    CHECK(raw4 >= previous4);
    previous3 = raw3;
    previous4 = raw4;
  }
}

TEST_CASE("positive tail bounds hold in simulation") {
  // at n = 1000 the three-term estimates are strictly positive
  const std::vector<double> caps = geometric_caps(0.9, 0.8, 1000);
  McParams params;
  params.n = 1000;
  params.set_size = 20;
  params.cap_sequence = caps;
  params.epsilon = 0.4;
  params.varsigma = 0.3;

  const TailBound t3 = theorem3_probability(1000, 20, caps, 0.4, 0.3, 1.0);
  REQUIRE(t3.clamped > 0.3);
  const SeparabilityReport r3 = monte_carlo_separation(
      McScenario::PointVsEllipsoids, params, 300, 31337);
  REQUIRE(r3.theoretical_lower_bound.has_value());
  CHECK(*r3.theoretical_lower_bound == doctest::Approx(t3.clamped));
  CHECK(r3.empirical_frequency >= t3.clamped - r3.confidence_radius);

  const TailBound t4 = theorem4_probability(1000, 20, caps, 0.4, 0.3, 1.0);
  REQUIRE(t4.clamped > 0.3);
  const SeparabilityReport r4 = monte_carlo_separation(
      McScenario::RandomGranuleVsEllipsoids, params, 300, 1729);
  CHECK(r4.empirical_frequency >= t4.clamped - r4.confidence_radius);
}

TEST_CASE("quasiorthogonality conjunction implies the Fisher inequality") {
  // with eps < alpha/(1+alpha) the three tracked events force
  // alpha (x, x') > (x, z') over whole granules; verified via support values
  const std::size_t n = 400, N = 5;
  const double eps = 0.4, alpha = 0.9;
  REQUIRE(eps < alpha / (1.0 + alpha));
  const std::vector<double> caps = geometric_caps(0.9, 0.8, n);

  GranuleUniverseSpec spec;
  spec.n = n;
  spec.count = N;
  spec.shape = GranuleUniverseSpec::Shape::Ellipsoid;
  spec.cap_sequence = caps;
  spec.seed = 555;
  const auto granules = generate_granules(spec);
  GranuleUniverseSpec own_spec = spec;
  own_spec.count = 1;
  own_spec.seed = 556;
  const Ellipsoid own = generate_granules(own_spec)[0];

  const double cap_radius = eps / (1.0 + std::sqrt(2.0));
  const double vartheta = std::min(0.3, cap_radius);
  std::size_t k = 0;
  while (caps[k] >= cap_radius) ++k;

  std::size_t conjunction_hits = 0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::derive(787878, stream::kTrial, trial);
    const Vector x = sample_uniform_ball_point(n, rng);
    bool holds = x.squaredNorm() >= 1.0 - vartheta;
    for (const Ellipsoid& g : granules)
      if (x.dot(g.center) > vartheta) holds = false;
    auto axes_ok = [&](const Ellipsoid& g) {
      for (std::size_t i = 0; i < k; ++i) {
        const double limit =
            vartheta / (std::sqrt(static_cast<double>(k)) * caps[i]);
        if (std::abs(x.dot(g.axes.row(static_cast<Eigen::Index>(i))
                               .transpose())) > limit)
          return false;
      }
      return true;
    };
    for (const Ellipsoid& g : granules)
      if (!axes_ok(g)) holds = false;
    if (!axes_ok(own)) holds = false;
    if (!holds) continue;

    ++conjunction_hits;
    // alpha * min over own granule vs max over all obstacle granules
    const Vector own_coords = own.axes * x;
    const double own_support =
        std::sqrt((own.semi_axes.cwiseProduct(own_coords)).squaredNorm());
    const double lhs = alpha * (x.squaredNorm() - own_support);
    for (const Ellipsoid& g : granules)
      CHECK(lhs > ellipsoid_support_max(x, g).value);
  }
  CHECK(conjunction_hits >= 10);  // the check must actually exercise cases
}

TEST_CASE("trial streams make the schedule irrelevant") {
  McParams params;
  params.n = 40;
  params.set_size = 300;
  params.alpha = 0.8;
  const SeparabilityReport serial = monte_carlo_separation(
      McScenario::PointVsPoints, params, 400, 1212, 1);
  const SeparabilityReport threaded = monte_carlo_separation(
      McScenario::PointVsPoints, params, 400, 1212, 4);
  CHECK(serial.successes == threaded.successes);
  CHECK(serial.empirical_frequency == threaded.empirical_frequency);
}

TEST_CASE("log-concave granules: qualitative frequency growth in n") {
  McParams low, high;
  low.n = 50;
  high.n = 200;
  for (McParams* p : {&low, &high}) {
    p->set_size = 20;
    p->epsilon = 0.2;  // tight enough that low dimension visibly fails
    p->varsigma = 0.3;
    p->cap_sequence = geometric_caps(0.9, 0.8, p->n);
  }
  const SeparabilityReport low_report = monte_carlo_separation(
      McScenario::LogconcaveGranules, low, 2000, 2001);
  const SeparabilityReport high_report = monte_carlo_separation(
      McScenario::LogconcaveGranules, high, 2000, 2001);
  CHECK_FALSE(low_report.theoretical_lower_bound.has_value());
  CHECK(high_report.empirical_frequency >=
        low_report.empirical_frequency + 0.01);
}
