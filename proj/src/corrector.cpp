#include "granular/corrector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "granular/errors.hpp"
#include "granular/kmeans.hpp"
#include "granular/linalg.hpp"

namespace granular {

ThresholdSpec ThresholdSpec::global(double theta) {
  ThresholdSpec spec;
  spec.kind = Kind::Global;
  spec.value = theta;
  return spec;
}

ThresholdSpec ThresholdSpec::per_cluster(std::vector<double> thetas) {
  ThresholdSpec spec;
  spec.kind = Kind::PerCluster;
  spec.cluster_thresholds = std::move(thetas);
  return spec;
}

ThresholdSpec ThresholdSpec::specificity(double s) {
  if (s < 0.0 || s > 1.0)
    throw ParameterOutOfRange("specificity target must lie in [0, 1]");
  ThresholdSpec spec;
  spec.kind = Kind::Specificity;
  spec.value = s;
  return spec;
}

ThresholdSpec ThresholdSpec::roc_point(double fpr) {
  if (fpr < 0.0 || fpr > 1.0)
    throw ParameterOutOfRange("target FPR must lie in [0, 1]");
  ThresholdSpec spec;
  spec.kind = Kind::RocPoint;
  spec.value = fpr;
  return spec;
}

Vector fisher_discriminant(const Matrix& cov_sum, const Vector& centroid) {
  if (cov_sum.rows() != cov_sum.cols() || cov_sum.rows() != centroid.size())
    throw DimensionMismatch("covariance/centroid shapes disagree");
  Matrix regularized = cov_sum;
  if (spd_condition_number(cov_sum) > 1e12) {
    const double ridge =
        1e-8 * cov_sum.trace() / static_cast<double>(cov_sum.rows());
    regularized += std::max(ridge, 1e-300) *
                   Matrix::Identity(cov_sum.rows(), cov_sum.cols());
  }
  Vector direction = regularized.ldlt().solve(centroid);
  const double norm = direction.norm();
  if (norm == 0.0)
    throw ZeroDirection("Fisher discriminant collapsed to zero");
  return direction / norm;
}

namespace {

Matrix covariance_rows(const Matrix& rows) {
  const Eigen::Index n = rows.rows();
  if (n < 2) return Matrix::Zero(rows.cols(), rows.cols());
  const Vector mean = rows.colwise().mean();
  const Matrix centered = rows.rowwise() - mean.transpose();
  return centered.transpose() * centered / static_cast<double>(n - 1);
}

// Covariance from the running accumulators: sum of outer products, mean and
// count. count < 2 has no spread to estimate; zero keeps the discriminant
// defined through the X covariance alone.
Matrix covariance_from_moments(const Matrix& second_moment, const Vector& mean,
                               std::size_t count) {
  if (count < 2)
    return Matrix::Zero(second_moment.rows(), second_moment.cols());
  const double n = static_cast<double>(count);
  Matrix cov =
      (second_moment - n * (mean * mean.transpose())) / (n - 1.0);
  return 0.5 * (cov + cov.transpose());
}

double threshold_below_quantile(std::vector<double> scores, double s) {
  // Largest theta with at least ceil(s * M) scores strictly above it.
  if (scores.empty()) throw EmptyScores("no scores to calibrate against");
  if (s <= 0.0)
    return *std::max_element(scores.begin(), scores.end());
  std::sort(scores.begin(), scores.end(), std::greater<>());
  const std::size_t need = std::min<std::size_t>(
      scores.size(),
      static_cast<std::size_t>(std::ceil(s * static_cast<double>(scores.size()))));
  const double pivot = scores[need - 1];
  return std::nextafter(pivot, -std::numeric_limits<double>::infinity());
}

void refresh_discriminant(CorrectorModel& model, std::size_t cluster) {
  const Vector centroid =
      model.clusters.row(static_cast<Eigen::Index>(cluster));
  const Matrix cov_cluster = covariance_from_moments(
      model.second_moments[cluster], centroid, model.counts[cluster]);
  model.discriminants.row(static_cast<Eigen::Index>(cluster)) =
      fisher_discriminant(model.cov_x + cov_cluster, centroid).transpose();
}

}  // namespace

CorrectorModel train_corrector(const DataMatrix& X, const DataMatrix& Y,
                               std::size_t k, const SelectionRule& selection,
                               const ThresholdSpec& theta, std::uint64_t seed) {
  X.validate();
  Y.validate();
  if (X.rows() < 2)
    throw InsufficientData("need at least two error/new-class samples");
  if (Y.rows() < static_cast<Eigen::Index>(k))
    throw InsufficientData("need at least k normal samples");
  if (X.cols() != Y.cols())
    throw DimensionMismatch("X and Y dimensions differ");
  if (k < 1) throw ParameterOutOfRange("cluster count must be >= 1");

  CorrectorModel model;
  model.seed = seed;

  // Principal subspace and whitening of the centralized X.
  const Vector centroid = X.values.colwise().mean();
  const Matrix x_centered = X.values.rowwise() - centroid.transpose();
  const Matrix cov =
      x_centered.transpose() * x_centered / static_cast<double>(X.rows() - 1);
  model.projection = eigen_select(cov, selection, &centroid);

  const Matrix x_whitened = model.projection.project_whiten_rows(X.values);
  const Matrix y_whitened = model.projection.project_whiten_rows(Y.values);
  model.cov_x = covariance_rows(x_whitened);

  const KmeansResult clustering = kmeans(y_whitened, k, seed);
  model.clusters = clustering.centroids;
  model.counts = clustering.counts;

  model.second_moments.assign(
      k, Matrix::Zero(model.reduced_dim(), model.reduced_dim()));
  for (Eigen::Index i = 0; i < y_whitened.rows(); ++i) {
    const int c = clustering.assignment[static_cast<std::size_t>(i)];
    model.second_moments[static_cast<std::size_t>(c)].noalias() +=
        y_whitened.row(i).transpose() * y_whitened.row(i);
  }

  model.discriminants.resize(static_cast<Eigen::Index>(k),
                             model.reduced_dim());
  for (std::size_t c = 0; c < k; ++c) refresh_discriminant(model, c);

  switch (theta.kind) {
    case ThresholdSpec::Kind::Global:
      model.thresholds =
          Vector::Constant(static_cast<Eigen::Index>(k), theta.value);
      break;
    case ThresholdSpec::Kind::PerCluster:
      if (theta.cluster_thresholds.size() != k)
        throw ParameterOutOfRange("expected " + std::to_string(k) +
                                  " per-cluster thresholds");
      model.thresholds = Eigen::Map<const Vector>(
          theta.cluster_thresholds.data(),
          static_cast<Eigen::Index>(theta.cluster_thresholds.size()));
      break;
    case ThresholdSpec::Kind::Specificity:
    case ThresholdSpec::Kind::RocPoint: {
      model.thresholds = Vector::Zero(static_cast<Eigen::Index>(k));
      const auto y_scores = score_rows(model, Y.values);
      model.thresholds =
          calibrate_thresholds(model, {}, y_scores, theta);
      break;
    }
  }
  return model;
}

Decision decide(const CorrectorModel& model, const Vector& x) {
  if (x.size() != model.input_dim())
    throw DimensionMismatch("expected dimension " +
                            std::to_string(model.input_dim()) + ", got " +
                            std::to_string(x.size()));
  const Vector whitened = model.projection.project_whiten(x);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.cluster_count(); ++c) {
    const double d =
        (whitened.transpose() - model.clusters.row(static_cast<Eigen::Index>(c)))
            .squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  Decision decision;
  decision.cluster = best;
  decision.score =
      model.discriminants.row(static_cast<Eigen::Index>(best)).dot(whitened);
  const bool above = decision.score > model.thresholds[static_cast<Eigen::Index>(best)];
  decision.association = (above == model.y_above_threshold)
                             ? Association::NormalSetY
                             : Association::ErrorOrNewClassX;
  return decision;
}

std::vector<std::pair<std::size_t, double>> score_rows(
    const CorrectorModel& model, const Matrix& rows) {
  std::vector<std::pair<std::size_t, double>> scores;
  scores.reserve(static_cast<std::size_t>(rows.rows()));
  const Matrix whitened = model.projection.project_whiten_rows(rows);
  for (Eigen::Index i = 0; i < whitened.rows(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.cluster_count(); ++c) {
      const double d =
          (whitened.row(i) - model.clusters.row(static_cast<Eigen::Index>(c)))
              .squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    scores.emplace_back(
        best,
        model.discriminants.row(static_cast<Eigen::Index>(best))
            .dot(whitened.row(i)));
  }
  return scores;
}

Vector calibrate_thresholds(
    const CorrectorModel& model, const std::vector<double>& x_scores,
    const std::vector<std::pair<std::size_t, double>>& y_scores,
    const ThresholdSpec& target) {
  (void)x_scores;  // reserved for operating points that trade off both sets
  if (target.kind != ThresholdSpec::Kind::Specificity &&
      target.kind != ThresholdSpec::Kind::RocPoint)
    throw ParameterOutOfRange("calibration target must be a rate");
  if (y_scores.empty()) throw EmptyScores("no normal-set scores supplied");
  const double s = target.kind == ThresholdSpec::Kind::Specificity
                       ? target.value
                       : 1.0 - target.value;

  const std::size_t k = model.cluster_count();
  std::vector<std::vector<double>> per_cluster(k);
  std::vector<double> all;
  all.reserve(y_scores.size());
  for (const auto& [cluster, score] : y_scores) {
    if (cluster >= k)
      throw ParameterOutOfRange("score references cluster " +
                                std::to_string(cluster));
    per_cluster[cluster].push_back(score);
    all.push_back(score);
  }
  const double global = threshold_below_quantile(all, s);

  Vector thresholds(static_cast<Eigen::Index>(k));
  for (std::size_t c = 0; c < k; ++c)
    thresholds[static_cast<Eigen::Index>(c)] =
        per_cluster[c].empty() ? global
                               : threshold_below_quantile(per_cluster[c], s);
  return thresholds;
}

RocCurve roc_sweep(const CorrectorModel& model, const DataMatrix& x_eval,
                   const DataMatrix& y_eval, std::size_t grid) {
  if (x_eval.rows() == 0 || y_eval.rows() == 0)
    throw EmptyScores("both evaluation sets must be nonempty");
  if (grid < 2) throw ParameterOutOfRange("grid must be >= 2");

  // The shared offset delta moves every threshold at once; a row lands on
  // the X side iff score - theta_cluster <= delta, so margins are all that
  // matters.
  auto margins = [&](const DataMatrix& rows) {
    std::vector<double> m;
    const auto scored = score_rows(model, rows.values);
    m.reserve(scored.size());
    for (const auto& [cluster, score] : scored)
      m.push_back(score -
                  model.thresholds[static_cast<Eigen::Index>(cluster)]);
    return m;
  };
  std::vector<double> x_margins = margins(x_eval);
  std::vector<double> y_margins = margins(y_eval);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : x_margins) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : y_margins) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = 1e-9 * std::max(1.0, hi - lo);

  auto rate_at = [](const std::vector<double>& margins_sorted, double delta) {
    // fraction with margin <= delta
    const auto it = std::upper_bound(margins_sorted.begin(),
                                     margins_sorted.end(), delta);
    return static_cast<double>(it - margins_sorted.begin()) /
           static_cast<double>(margins_sorted.size());
  };
  std::sort(x_margins.begin(), x_margins.end());
  std::sort(y_margins.begin(), y_margins.end());

  RocCurve curve;
  curve.points.reserve(grid + 2);
  curve.points.push_back({0.0, 0.0, lo - pad});
  for (std::size_t i = 0; i < grid; ++i) {
    const double delta =
        lo - pad +
        (hi + pad - (lo - pad)) * static_cast<double>(i) /
            static_cast<double>(grid - 1);
    curve.points.push_back(
        {rate_at(y_margins, delta), rate_at(x_margins, delta), delta});
  }
  curve.points.push_back({1.0, 1.0, hi + pad});
  std::sort(curve.points.begin(), curve.points.end(),
            [](const RocPoint& a, const RocPoint& b) {
              return a.false_positive_rate < b.false_positive_rate ||
                     (a.false_positive_rate == b.false_positive_rate &&
                      a.true_positive_rate < b.true_positive_rate);
            });

  double auc = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    auc += (b.false_positive_rate - a.false_positive_rate) *
           0.5 * (a.true_positive_rate + b.true_positive_rate);
  }
  curve.auc = auc;
  return curve;
}

Decision dispatch_and_correct(const CorrectorModel& model,
                              const Vector& full_signal,
                              const std::vector<CorrectionRule>& payloads,
                              const OutputExtractor& extract_output) {
  if (payloads.size() != model.cluster_count())
    throw MissingPayload("expected one correction rule per cluster (" +
                         std::to_string(model.cluster_count()) + "), got " +
                         std::to_string(payloads.size()));
  Decision decision = decide(model, full_signal);
  if (decision.association == Association::ErrorOrNewClassX) {
    const CorrectionRule& rule = payloads[decision.cluster];
    if (!rule) throw MissingPayload("correction rule for cluster " +
                                    std::to_string(decision.cluster) +
                                    " is empty");
    decision.corrected_output = rule(full_signal);
  } else {
    decision.corrected_output =
        extract_output ? extract_output(full_signal) : full_signal;
  }
  return decision;
}

std::size_t online_update(CorrectorModel& model, const Vector& new_error) {
  if (new_error.size() != model.input_dim())
    throw DimensionMismatch("expected dimension " +
                            std::to_string(model.input_dim()));
  const Vector whitened = model.projection.project_whiten(new_error);

  std::size_t nearest = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.cluster_count(); ++c) {
    const double d =
        (whitened.transpose() - model.clusters.row(static_cast<Eigen::Index>(c)))
            .squaredNorm();
    if (d < best_d) {
      best_d = d;
      nearest = c;
    }
  }

  const double count = static_cast<double>(model.counts[nearest]);
  model.clusters.row(static_cast<Eigen::Index>(nearest)) +=
      (whitened.transpose() -
       model.clusters.row(static_cast<Eigen::Index>(nearest))) /
      (count + 1.0);
  model.counts[nearest] += 1;
  model.second_moments[nearest].noalias() += whitened * whitened.transpose();
  refresh_discriminant(model, nearest);
  return nearest;
}

}  // namespace granular
