#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "granular/types.hpp"

namespace granular {

enum class WeightKind : std::uint8_t {
  Classical,
  Supervised,
  Semisupervised,
  Tca,
  Dapca,
};

/// Declarative pairwise-weight rule. The implied N x N matrix is symmetric
/// and is never materialized by the solver; materialize_weights exists for
/// small-N inspection and oracles.
///
/// Rules by kind (W_ij):
///   classical        all pairs +1
///   supervised       same class -alpha, different classes +1
///   semisupervised   labeled pairs as supervised; unlabeled-unlabeled +1;
///                    labeled-unlabeled 0
///   tca              semisupervised weights plus mean-attraction term
///                    -beta (mu_L - mu_U)(mu_L - mu_U)^T added to Q^W
///   dapca            source pairs as supervised; target-target +beta;
///                    target to each of its k nearest source rows -gamma
struct WeightScheme {
  WeightKind kind = WeightKind::Classical;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t k = 1;

  static WeightScheme classical();
  static WeightScheme supervised(double alpha);
  static WeightScheme semisupervised(double alpha, double beta = 0.0);
  static WeightScheme tca(double alpha, double beta);
  static WeightScheme dapca(double alpha, double beta, double gamma,
                            std::size_t k);
};

const char* weight_kind_name(WeightKind kind);
WeightKind weight_kind_from_name(const std::string& name);

/// Semi-supervised scheme from a partial label vector; kUnlabeled entries
/// follow the classical rule, labeled ones the supervised rule. The labels
/// themselves travel with the DataMatrix; this just fixes the scheme record.
WeightScheme assign_weights_semisupervised(const std::vector<int>& labels,
                                           double alpha, double beta = 0.0);

/// neighbors[t] lists the source-row indices attracted to the t-th target
/// row (row order of the target rows inside the DataMatrix).
using NeighborMap = std::vector<std::vector<std::size_t>>;

/// W_ij for one pair under a scheme. O(k) for dapca pairs, O(1) otherwise.
double pair_weight(const WeightScheme& scheme, const DataMatrix& data,
                   const NeighborMap* neighbors, Eigen::Index i,
                   Eigen::Index j);

/// Dense weight matrix for small N (inspection, enumeration tests).
Matrix materialize_weights(const WeightScheme& scheme, const DataMatrix& data,
                           const NeighborMap* neighbors = nullptr);

/// The d x d matrix Q^W with entries
///   q_lm = sum_i (sum_r W_ir) x_il x_im  -  sum_ij W_ij x_il x_jm,
/// minus beta (mu_L - mu_U)(mu_L - mu_U)^T for the tca kind.
/// Exploits the block-constant weight structure (plus the sparse kNN links
/// of dapca), so the cost is O(N d^2 + k N_target d) rather than O(N^2 d^2).
/// Expects centered data for the PCA interpretation; not enforced.
///
/// Empty-domain degeneracy (allow_domain_degeneracy = true): tca without
/// both domains drops the mean term; dapca without targets reduces to the
/// semisupervised rule on the sources, and without sources to the classical
/// rule on the targets. With the fallback disabled these raise EmptyDomain.
Matrix build_qw(const DataMatrix& data, const WeightScheme& scheme,
                const NeighborMap* neighbors = nullptr,
                bool allow_domain_degeneracy = true);

struct SelectionRule {
  enum class Kind : std::uint8_t { Fixed, Kaiser, BrokenStick, Condition };
  Kind kind = Kind::Fixed;
  std::size_t components = 2;  // Fixed
  double kappa = 10.0;         // Condition: keep lambda_1/lambda_i < kappa

  static SelectionRule fixed(std::size_t m);
  static SelectionRule kaiser();
  static SelectionRule broken_stick();
  static SelectionRule condition(double kappa = 10.0);
};

/// Orthonormal basis of a retained eigenspace plus the whitening scales.
struct Projector {
  Vector mean;              // subtracted before projecting
  Matrix basis;             // m x d, orthonormal rows
  Vector eigenvalues;       // descending, strictly positive
  Vector whitening_scales;  // 1/sqrt(eigenvalue)

  Eigen::Index components() const { return basis.rows(); }
  Eigen::Index dim() const { return basis.cols(); }

  /// basis * (x - mean)
  Vector project(const Vector& x) const;
  /// Row-wise projection of an N x d matrix.
  Matrix project_rows(const Matrix& rows) const;
  /// diag(whitening) * basis * (x - mean)
  Vector project_whiten(const Vector& x) const;
  Matrix project_whiten_rows(const Matrix& rows) const;
};

/// Top eigenvectors of a symmetric Q^W under a retention rule. Components
/// with eigenvalue <= 0 are always excluded, whatever the rule says; the
/// Kaiser rule keeps eigenvalues above the mean eigenvalue, broken-stick
/// keeps the leading run above the broken-stick proportions of the positive
/// spectrum, condition(kappa) keeps lambda_1/lambda_i < kappa.
/// `mean` seeds the projector's centering vector (zero when omitted).
Projector eigen_select(const Matrix& qw, const SelectionRule& rule,
                       const Vector* mean = nullptr);

/// Centers the data, builds Q^W, and selects components; the mean ends up in
/// the projector so new points are centered consistently.
Projector weighted_pca(const DataMatrix& data, const WeightScheme& scheme,
                       const SelectionRule& rule,
                       const NeighborMap* neighbors = nullptr);

/// Exact k nearest source rows for every target row (brute force, Euclidean,
/// ties broken by the lower source index). With a projector the distance is
/// the projected seminorm ||P(x) - P(y)||; whitening is not applied.
NeighborMap knn_source_neighbors(const DataMatrix& target,
                                 const DataMatrix& source, std::size_t k,
                                 const Projector* projector = nullptr);

/// Weighted scatter H = 1/2 sum_ij W_ij ||P(x_i - x_j)||^2 of the projected
/// data (plus the tca mean-attraction term when applicable, so the value
/// always equals sum_e e^T Q^W e over the basis). Same block decomposition
/// as build_qw, evaluated in the projected space.
double scatter_value(const Projector& projector, const DataMatrix& data,
                     const WeightScheme& scheme,
                     const NeighborMap* neighbors = nullptr);

struct DapcaResult {
  Projector projector;
  std::vector<double> history;  // H value per iteration, non-decreasing
  std::size_t iterations = 0;
  NeighborMap neighbors;  // final assignment
};

/// Alternating DAPCA: assign target-to-source neighbors (first pass in the
/// ambient space, later passes in the current projection), rebuild Q^W,
/// reselect components. Stops when an assignment repeats, the H gain drops
/// below 1e-9 relative, or max_iter is hit. Empty target degenerates to
/// semi-supervised PCA of the source; empty source to classical PCA of the
/// target.
DapcaResult iterative_dapca(const DataMatrix& source, const DataMatrix& target,
                            const WeightScheme& scheme,
                            const SelectionRule& rule,
                            std::size_t max_iter = 100);

}  // namespace granular
