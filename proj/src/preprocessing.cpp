#include "granular/preprocessing.hpp"

#include <cmath>
#include <string>

#include "granular/errors.hpp"

namespace granular {

RegimeReport classify_regime(std::size_t d, std::size_t N,
                             std::optional<std::size_t> intrinsic_dim,
                             double log_factor) {
  if (d < 1 || N < 1)
    throw ParameterOutOfRange("classify_regime requires d >= 1 and N >= 1");
  if (intrinsic_dim && *intrinsic_dim > d)
    throw ParameterOutOfRange("intrinsic dimension exceeds attribute count");
  if (log_factor <= 0.0)
    throw ParameterOutOfRange("log_factor must be positive");

  RegimeReport report;
  report.effective_dim = intrinsic_dim ? *intrinsic_dim : d;
  report.donoho_boundary = static_cast<double>(N);
  report.postclassical_boundary =
      log_factor * std::log(static_cast<double>(N));

  if (static_cast<double>(d) > report.donoho_boundary)
    report.regime = Regime::Donoho;
  else if (static_cast<double>(report.effective_dim) >
           report.postclassical_boundary)
    report.regime = Regime::Postclassical;
  else
    report.regime = Regime::Classical;
  return report;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Classical: return "classical";
    case Regime::Postclassical: return "postclassical";
    case Regime::Donoho: return "donoho";
  }
  return "?";
}

std::pair<DataMatrix, PipelineReport> center_standardize(
    const DataMatrix& data, const PipelineOptions& options) {
  data.validate();
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (n < 2) throw InsufficientData("center_standardize requires N >= 2");

  PipelineReport report;
  report.mean = Vector::Zero(d);
  report.scales = Vector::Ones(d);

  Matrix work = data.values;
  if (options.centralize) {
    report.mean = work.colwise().mean();
    work.rowwise() -= report.mean.transpose();
  }

  const bool drop = options.drop_degenerate || options.standardize;
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    const double centered_mean = work.col(j).mean();
    const double var =
        (work.col(j).array() - centered_mean).square().sum() /
        static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    const double col_magnitude = data.values.col(j).cwiseAbs().maxCoeff();
    const bool degenerate = sd <= 1e-12 * col_magnitude;
    if (degenerate && drop) {
      report.dropped_columns.push_back(static_cast<std::size_t>(j));
      continue;
    }
    keep.push_back(j);
    if (options.standardize) report.scales[j] = sd;
  }
  if (keep.empty())
    throw AllColumnsDegenerate("every column has vanishing variance");

  Matrix reduced(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t jj = 0; jj < keep.size(); ++jj)
    reduced.col(static_cast<Eigen::Index>(jj)) =
        work.col(keep[jj]) / report.scales[keep[jj]];

  report.row_norms = reduced.rowwise().norm();
  switch (options.length_mode) {
    case LengthMode::Unit:
      for (Eigen::Index i = 0; i < n; ++i) {
        const double norm = report.row_norms[i];
        if (norm > 0.0) reduced.row(i) /= norm;
      }
      break;
    case LengthMode::MeanLength: {
      const double mean_norm = report.row_norms.mean();
      if (mean_norm > 0.0) reduced /= mean_norm;
      break;
    }
    case LengthMode::None:
      break;
  }

  DataMatrix out;
  out.values = std::move(reduced);
  out.labels = data.labels;
  out.domains = data.domains;
  return {std::move(out), std::move(report)};
}

DataMatrix correlation_transform(const DataMatrix& train,
                                 const DataMatrix* query,
                                 bool require_unit_rows) {
  train.validate();
  if (require_unit_rows) {
    const Vector norms = train.values.rowwise().norm();
    for (Eigen::Index i = 0; i < norms.size(); ++i)
      if (std::abs(norms[i] - 1.0) > 1e-6)
        throw ParameterOutOfRange(
            "training row " + std::to_string(i) +
            " is not unit length; run center_standardize first");
  }

  DataMatrix out;
  if (query == nullptr) {
    out.values = train.values * train.values.transpose();
    out.labels = train.labels;
    out.domains = train.domains;
    return out;
  }
  query->validate();
  if (query->cols() != train.cols())
    throw DimensionMismatch("query has " + std::to_string(query->cols()) +
                            " columns, train has " +
                            std::to_string(train.cols()));
  out.values = query->values * train.values.transpose();
  out.labels = query->labels;
  out.domains = query->domains;
  return out;
}

}  // namespace granular
