#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "granular/types.hpp"

namespace granular {

enum class MatrixFormat : std::uint8_t { Csv, Binary };

/// Column selector: by header name or 0-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct LoadOptions {
  MatrixFormat format = MatrixFormat::Csv;
  std::optional<ColumnRef> label_column;
  std::optional<ColumnRef> domain_column;
  /// CSV header handling; unset = auto-detect (non-numeric first row).
  std::optional<bool> has_header;
};

/// CSV or raw binary loader. Rejects NaN/Inf with the offending row named;
/// malformed cells raise ParseError with row and column. Lines starting
/// with '#' are comments. Label and domain columns are split out of the
/// numeric block; domain values are "source"/"target" or 0/1.
DataMatrix load_matrix(const std::filesystem::path& path,
                       const LoadOptions& options = {});

struct SaveOptions {
  MatrixFormat format = MatrixFormat::Csv;
  /// Significant digits for CSV floats; 17 round-trips doubles exactly.
  int precision = 17;
  std::optional<std::string> comment;  // written as a leading '#' line
  bool write_labels = true;
  bool write_domains = true;
};

void save_matrix(const std::filesystem::path& path, const DataMatrix& data,
                 const SaveOptions& options = {});

/// Writes through a temp file in the target directory and renames into
/// place, so a crashed run never leaves a truncated file at `path`.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

/// "%.17g"-style formatting used across all text outputs.
std::string format_double(double value, int precision = 17);

}  // namespace granular
