#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "granular/types.hpp"
#include "granular/weighted_pca.hpp"

namespace granular {

/// How the per-cluster decision thresholds are fixed at training time.
struct ThresholdSpec {
  enum class Kind : std::uint8_t { Global, PerCluster, Specificity, RocPoint };
  Kind kind = Kind::Global;
  double value = 0.0;  // Global theta, Specificity s, RocPoint fpr
  std::vector<double> cluster_thresholds;  // PerCluster

  static ThresholdSpec global(double theta);
  static ThresholdSpec per_cluster(std::vector<double> thetas);
  static ThresholdSpec specificity(double s);
  /// Target false-positive rate; identical to specificity(1 - fpr).
  static ThresholdSpec roc_point(double fpr);
};

/// Few-shot corrector state: the error/new-class set X gets a centroid,
/// a principal subspace and whitening; the normal set Y gets k clusters in
/// that whitened space, each with a normalized Fisher discriminant and a
/// threshold. Per-cluster mean/second-moment accumulators make the online
/// update a closed-form recompute of one discriminant.
struct CorrectorModel {
  Projector projection;          // mean = centroid of X, plus basis/whitening
  Matrix cov_x;                  // covariance of whitened X (near identity)
  Matrix clusters;               // k x m centroids of whitened Y*
  std::vector<std::size_t> counts;
  std::vector<Matrix> second_moments;  // per cluster: sum of y y^T
  Matrix discriminants;          // k x m unit rows
  Vector thresholds;             // theta_1 .. theta_k
  bool y_above_threshold = true; // associate with Y iff score > theta
  std::uint64_t seed = 0;

  std::size_t cluster_count() const {
    return static_cast<std::size_t>(clusters.rows());
  }
  Eigen::Index input_dim() const { return projection.dim(); }
  Eigen::Index reduced_dim() const { return projection.components(); }
};

enum class Association : std::uint8_t { NormalSetY, ErrorOrNewClassX };

struct Decision {
  std::size_t cluster = 0;
  double score = 0.0;
  Association association = Association::NormalSetY;
  std::optional<Vector> corrected_output;
};

/// Normalized Fisher direction (cov_sum)^-1 centroid / ||...||. Ill
/// conditioned sums (condition number above 1e12 or singular) are ridged
/// with 1e-8 * trace/m before solving.
Vector fisher_discriminant(const Matrix& cov_sum, const Vector& centroid);

/// Trains the corrector: centroid and PCA of X, projection and whitening of
/// both sets, k-means clustering of whitened Y*, one Fisher discriminant per
/// cluster, thresholds per `theta`.
CorrectorModel train_corrector(const DataMatrix& X, const DataMatrix& Y,
                               std::size_t k, const SelectionRule& selection,
                               const ThresholdSpec& theta, std::uint64_t seed);

/// Projects, whitens, dispatches to the nearest cluster centroid (ties to
/// the lower index) and thresholds the discriminant score.
Decision decide(const CorrectorModel& model, const Vector& x);

/// Per-cluster scores of a batch: pair (cluster, score) per row.
std::vector<std::pair<std::size_t, double>> score_rows(
    const CorrectorModel& model, const Matrix& rows);

/// theta_l = largest threshold keeping at least fraction s of the Y scores
/// dispatched to cluster l strictly above it. Clusters that received no Y
/// samples inherit the global quantile over all Y scores.
Vector calibrate_thresholds(const CorrectorModel& model,
                            const std::vector<double>& x_scores,
                            const std::vector<std::pair<std::size_t, double>>&
                                y_scores,
                            const ThresholdSpec& target);

struct RocPoint {
  double false_positive_rate;
  double true_positive_rate;
  double offset;
};

struct RocCurve {
  std::vector<RocPoint> points;  // sorted by FPR
  double auc = 0.0;
};

/// Sweeps one shared additive offset across all thresholds. True positives:
/// X rows associated with X; false positives: Y rows associated with X.
RocCurve roc_sweep(const CorrectorModel& model, const DataMatrix& x_eval,
                   const DataMatrix& y_eval, std::size_t grid = 256);

using CorrectionRule = std::function<Vector(const Vector&)>;
using OutputExtractor = std::function<Vector(const Vector&)>;

/// Full corrector step: decide, then either run the owning cluster's
/// correction rule (X side) or extract the original output unchanged
/// (Y side). One rule per cluster is mandatory.
Decision dispatch_and_correct(const CorrectorModel& model,
                              const Vector& full_signal,
                              const std::vector<CorrectionRule>& payloads,
                              const OutputExtractor& extract_output = {});

/// Non-iterative single-error update: dispatch to the nearest cluster,
/// shift its centroid by (x_w - centroid)/(count+1), refresh its sufficient
/// statistics and recompute only that cluster's discriminant. Returns the
/// index of the updated cluster.
std::size_t online_update(CorrectorModel& model, const Vector& new_error);

}  // namespace granular
