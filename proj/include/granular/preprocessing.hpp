#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "granular/types.hpp"

namespace granular {

enum class Regime { Classical, Postclassical, Donoho };

struct RegimeReport {
  Regime regime;
  /// Attribute count is compared against this to call the d > N zone.
  double donoho_boundary;
  /// Effective dimension is compared against log_factor * ln(N).
  double postclassical_boundary;
  std::size_t effective_dim;  // intrinsic dimension when given, else d
};

/// Places a dataset shape on the classical / postclassical / d > N map.
/// The boundary constant of the d >> log N rule is not canonical; it is the
/// `log_factor` parameter (natural log, default factor 1).
RegimeReport classify_regime(std::size_t d, std::size_t N,
                             std::optional<std::size_t> intrinsic_dim = {},
                             double log_factor = 1.0);

const char* regime_name(Regime r);

enum class LengthMode { Unit, MeanLength, None };

/// Pipeline switches. Every step can hurt as well as help, so each one is
/// independently controllable; defaults follow the common path
/// (centralize, drop degenerate columns, standardize, unit row length).
struct PipelineOptions {
  bool centralize = true;
  bool drop_degenerate = true;  // forced on when standardize is on
  bool standardize = true;
  LengthMode length_mode = LengthMode::Unit;
};

struct PipelineReport {
  Vector mean;    // shift applied per original column (zeros when off)
  Vector scales;  // divisor per original column (1 for dropped/off)
  std::vector<std::size_t> dropped_columns;
  Vector row_norms;  // per-row norms before the row-length step
};

/// Column centering/standardization with degenerate-column removal, then the
/// row-length normalization chosen by `length_mode`.
///
/// A column is degenerate when its sample standard deviation is at most
/// 1e-12 * max|value| of that column (constant columns included).
/// Idempotence: reapplying to the output is an exact no-op for length modes
/// None and MeanLength. Unit row normalization reintroduces nonzero column
/// means, so a second pass is not a no-op in that mode.
std::pair<DataMatrix, PipelineReport> center_standardize(
    const DataMatrix& data, const PipelineOptions& options = {});

/// Gram map into cross-correlation space. Without a query, returns the
/// N x N matrix of pairwise inner products of the training rows; with one,
/// each query row maps to its inner products against every training row.
/// `require_unit_rows` asserts that training rows were length-normalized.
DataMatrix correlation_transform(const DataMatrix& train,
                                 const DataMatrix* query = nullptr,
                                 bool require_unit_rows = false);

}  // namespace granular
