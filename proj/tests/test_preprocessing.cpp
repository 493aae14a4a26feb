#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "granular/errors.hpp"
#include "granular/preprocessing.hpp"
#include "granular/rng.hpp"

using namespace granular;

namespace {

DataMatrix random_matrix(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  DataMatrix data;
  data.values.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      data.values(i, j) = rng.gaussian() * (1.0 + static_cast<double>(j));
  return data;
}

}  // namespace

TEST_CASE("regime classification boundaries") {
  CHECK(classify_regime(500000, 60).regime == Regime::Donoho);
  CHECK(classify_regime(1, 1000).regime == Regime::Classical);
  CHECK(classify_regime(100, 1000, {}, 10.0).regime == Regime::Postclassical);

  const RegimeReport report = classify_regime(100, 1000, {}, 10.0);
  CHECK(report.donoho_boundary == doctest::Approx(1000.0));
  CHECK(report.postclassical_boundary ==
        doctest::Approx(10.0 * std::log(1000.0)));
  CHECK(report.effective_dim == 100);

  // intrinsic dimension shrinks the effective dimension
  CHECK(classify_regime(100, 1000, 3, 10.0).regime == Regime::Classical);
  CHECK_THROWS_AS(classify_regime(10, 100, 20), ParameterOutOfRange);
}

TEST_CASE("regime label is monotone in d") {
  auto rank = [](Regime r) {
    return r == Regime::Classical ? 0 : r == Regime::Postclassical ? 1 : 2;
  };
  int previous = 0;
  for (std::size_t d = 1; d < 2000; d += 7) {
    const int now = rank(classify_regime(d, 500).regime);
    CHECK(now >= previous);
    previous = now;
  }
}

TEST_CASE("degenerate column is dropped and recorded") {
  DataMatrix data;
  data.values.resize(2, 2);
  data.values << 1.0, 1.0, 3.0, 1.0;

  PipelineOptions options;
  options.length_mode = LengthMode::None;
  auto [out, report] = center_standardize(data, options);

  REQUIRE(out.cols() == 1);
  CHECK(report.dropped_columns == std::vector<std::size_t>{1});
  CHECK(out.values(0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(out.values(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));

  options.length_mode = LengthMode::Unit;
  auto [unit_out, unit_report] = center_standardize(data, options);
  CHECK(unit_out.values(0, 0) == doctest::Approx(-1.0));
  CHECK(unit_out.values(1, 0) == doctest::Approx(1.0));
  CHECK(unit_report.row_norms.size() == 2);
}

TEST_CASE("moments after the pipeline") {
  const DataMatrix data = random_matrix(50, 10, 42);
  PipelineOptions options;
  options.length_mode = LengthMode::None;
  auto [out, report] = center_standardize(data, options);
  REQUIRE(out.cols() == 10);
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    CHECK(std::abs(out.values.col(j).mean()) <= 1e-12);
    const double var = out.values.col(j).squaredNorm() / 49.0;
    CHECK(std::abs(var - 1.0) <= 1e-12);
  }

  options.length_mode = LengthMode::Unit;
  auto [unit_out, unit_report] = center_standardize(data, options);
  for (Eigen::Index i = 0; i < unit_out.rows(); ++i)
    CHECK(unit_out.values.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pipeline is idempotent for none and mean-length modes") {
  for (LengthMode mode : {LengthMode::None, LengthMode::MeanLength}) {
    const DataMatrix data = random_matrix(40, 6, 7);
    PipelineOptions options;
    options.length_mode = mode;
    auto [once, r1] = center_standardize(data, options);
    auto [twice, r2] = center_standardize(once, options);
    REQUIRE(twice.cols() == once.cols());
    CHECK((twice.values - once.values).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("all-degenerate input is an error") {
  DataMatrix data;
  data.values = Matrix::Constant(3, 2, 5.0);
  CHECK_THROWS_AS(center_standardize(data), AllColumnsDegenerate);
}

TEST_CASE("switches disable individual steps") {
  const DataMatrix data = random_matrix(20, 4, 3);
  PipelineOptions options;
  options.centralize = false;
  options.standardize = false;
  options.drop_degenerate = false;
  options.length_mode = LengthMode::None;
  auto [out, report] = center_standardize(data, options);
  CHECK((out.values - data.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(report.mean.isZero());
  CHECK(report.scales.isOnes());
}

TEST_CASE("gram of orthonormal rows is the identity") {
  DataMatrix data;
  data.values = Matrix::Identity(4, 4);
  const DataMatrix gram = correlation_transform(data);
  CHECK((gram.values - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("query maps to inner products against the train rows") {
  DataMatrix train;
  train.values.resize(1, 3);
  train.values << 0.5, 0.5, std::sqrt(0.5);
  DataMatrix query;
  query.values.resize(1, 3);
  query.values << 1.0, 0.0, 0.0;
  const DataMatrix mapped = correlation_transform(train, &query);
  REQUIRE(mapped.rows() == 1);
  REQUIRE(mapped.cols() == 1);
  CHECK(mapped.values(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("gram matches the direct inner-product loop on wide data") {
  const Eigen::Index n = 60, d = 100000;
  Rng rng(11);
  DataMatrix data;
  data.values.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) data.values(i, j) = rng.gaussian();
    data.values.row(i) /= data.values.row(i).norm();
  }
  const DataMatrix gram = correlation_transform(data, nullptr, true);
  REQUIRE(gram.rows() == n);
  REQUIRE(gram.cols() == n);
  // direct O(N^2 d) evaluation as the oracle (sampled grid)
  for (Eigen::Index i = 0; i < n; i += 7) {
    for (Eigen::Index j = 0; j < n; j += 11) {
      double dot = 0.0;
      for (Eigen::Index c = 0; c < d; ++c)
        dot += data.values(i, c) * data.values(j, c);
      CHECK(gram.values(i, j) == doctest::Approx(dot).epsilon(1e-10));
    }
  }
  CHECK((gram.values - gram.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  for (Eigen::Index i = 0; i < n; ++i)
    CHECK(gram.values(i, i) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatch and unit-row precondition are reported") {
  DataMatrix train;
  train.values = Matrix::Identity(3, 3);
  DataMatrix query;
  query.values = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(correlation_transform(train, &query), DimensionMismatch);

  DataMatrix scaled;
  scaled.values = 2.0 * Matrix::Identity(3, 3);
  CHECK_THROWS_AS(correlation_transform(scaled, nullptr, true),
                  ParameterOutOfRange);
}
