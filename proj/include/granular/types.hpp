#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

namespace granular {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Domain : std::uint8_t { Source = 0, Target = 1 };

/// Label value marking a sample without a class id (semi-supervised data).
inline constexpr int kUnlabeled = -1;

/// N samples by d attributes, with optional per-sample class ids and
/// source/target domain tags. Labels are 0-based contiguous class ids;
/// kUnlabeled marks samples without one.
struct DataMatrix {
  Matrix values;
  std::optional<std::vector<int>> labels;
  std::optional<std::vector<Domain>> domains;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  bool has_labels() const { return labels.has_value(); }
  bool has_domains() const { return domains.has_value(); }

  int label(Eigen::Index i) const {
    return labels ? (*labels)[static_cast<std::size_t>(i)] : kUnlabeled;
  }
  Domain domain(Eigen::Index i) const {
    return domains ? (*domains)[static_cast<std::size_t>(i)] : Domain::Source;
  }

  /// Number of classes = max label + 1 (0 when nothing is labeled).
  int num_classes() const;

  /// Throws on non-finite entries, size mismatches, or out-of-range labels.
  void validate() const;
};

/// Stack a and b row-wise, preserving labels and tagging rows of `a` as
/// Source and rows of `b` as Target.
DataMatrix concat_domains(const DataMatrix& source, const DataMatrix& target);

}  // namespace granular
