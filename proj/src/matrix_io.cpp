#include "granular/matrix_io.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>
#include <vector>

#include "granular/errors.hpp"

namespace granular {

namespace {

constexpr std::array<char, 8> kBinaryMagic = {'G', 'R', 'N', 'L',
                                              'M', 'X', '0', '1'};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    const auto begin = s.find_first_not_of(" \t");
    const auto end = s.find_last_not_of(" \t");
    s = begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
  }
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    // from_chars does not accept "nan"/"inf" spellings everywhere; strtod does.
    char* endp = nullptr;
    errno = 0;
    out = std::strtod(cell.c_str(), &endp);
    if (errno != 0 || endp != cell.c_str() + cell.size() || cell.empty())
      return false;
  }
  return true;
}

std::size_t resolve_column(const ColumnRef& ref,
                           const std::vector<std::string>& header,
                           std::size_t width, const char* what) {
  if (std::holds_alternative<std::size_t>(ref)) {
    const std::size_t idx = std::get<std::size_t>(ref);
    if (idx >= width)
      throw ParseError(std::string(what) + " column index " +
                       std::to_string(idx) + " out of range");
    return idx;
  }
  const std::string& name = std::get<std::string>(ref);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ParseError(std::string(what) + " column '" + name +
                   "' not found in header");
}

Domain parse_domain(const std::string& cell, std::size_t row) {
  if (cell == "source" || cell == "0") return Domain::Source;
  if (cell == "target" || cell == "1") return Domain::Target;
  throw ParseError("row " + std::to_string(row) + ": domain value '" + cell +
                   "' is not source/target/0/1");
}

DataMatrix load_csv(const std::filesystem::path& path,
                    const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::vector<std::string> raw_lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    raw_lines.push_back(line);
  }
  if (raw_lines.empty()) throw ParseError(path.string() + " has no data rows");

  std::vector<std::string> first = split_csv_line(raw_lines.front());
  bool header = false;
  if (options.has_header) {
    header = *options.has_header;
  } else {
    for (const auto& cell : first) {
      double ignored;
      if (!cell.empty() && !parse_double(cell, ignored)) {
        header = true;
        break;
      }
    }
  }

  const std::size_t width = first.size();
  std::vector<std::string> header_cells =
      header ? first : std::vector<std::string>{};
  const std::size_t first_data = header ? 1 : 0;
  const std::size_t n_rows = raw_lines.size() - first_data;
  if (n_rows == 0) throw ParseError(path.string() + " has no data rows");

  std::optional<std::size_t> label_idx, domain_idx;
  if (options.label_column)
    label_idx = resolve_column(*options.label_column, header_cells, width,
                               "label");
  if (options.domain_column)
    domain_idx = resolve_column(*options.domain_column, header_cells, width,
                                "domain");
  if (label_idx && domain_idx && *label_idx == *domain_idx)
    throw ParseError("label and domain columns coincide");

  std::size_t value_width = width;
  if (label_idx) --value_width;
  if (domain_idx) --value_width;
  if (value_width == 0) throw ParseError("no numeric columns left");

  DataMatrix data;
  data.values.resize(static_cast<Eigen::Index>(n_rows),
                     static_cast<Eigen::Index>(value_width));
  std::vector<int> labels;
  std::vector<Domain> domains;

  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::vector<std::string> cells =
        split_csv_line(raw_lines[r + first_data]);
    const std::size_t human_row = r + 1;
    if (cells.size() != width)
      throw ParseError("row " + std::to_string(human_row) + ": expected " +
                       std::to_string(width) + " cells, got " +
                       std::to_string(cells.size()));
    Eigen::Index col_out = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (label_idx && c == *label_idx) {
        if (cells[c].empty() || cells[c] == "?") {
          labels.push_back(kUnlabeled);
        } else {
          double v;
          if (!parse_double(cells[c], v) || v != std::floor(v))
            throw ParseError("row " + std::to_string(human_row) + " column " +
                             std::to_string(c + 1) + ": bad label '" +
                             cells[c] + "'");
          labels.push_back(static_cast<int>(v));
        }
        continue;
      }
      if (domain_idx && c == *domain_idx) {
        domains.push_back(parse_domain(cells[c], human_row));
        continue;
      }
      double v;
      if (!parse_double(cells[c], v))
        throw ParseError("row " + std::to_string(human_row) + " column " +
                         std::to_string(c + 1) + ": cannot parse '" +
                         cells[c] + "'");
      if (!std::isfinite(v))
        throw NonFiniteValue("row " + std::to_string(human_row) + " column " +
                             std::to_string(c + 1) + ": non-finite value");
      data.values(static_cast<Eigen::Index>(r), col_out++) = v;
    }
  }
  if (label_idx) data.labels = std::move(labels);
  if (domain_idx) data.domains = std::move(domains);
  return data;
}

DataMatrix load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kBinaryMagic)
    throw ParseError(path.string() + ": bad magic for binary matrix");
  std::uint64_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!in || rows == 0 || cols == 0)
    throw ParseError(path.string() + ": bad binary header");
  DataMatrix data;
  data.values.resize(static_cast<Eigen::Index>(rows),
                     static_cast<Eigen::Index>(cols));
  std::vector<double> row_buffer(cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    in.read(reinterpret_cast<char*>(row_buffer.data()),
            static_cast<std::streamsize>(cols * sizeof(double)));
    if (!in)
      throw ParseError(path.string() + ": truncated at row " +
                       std::to_string(r + 1));
    data.values.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<const Vector>(row_buffer.data(),
                                 static_cast<Eigen::Index>(cols));
  }
  if (!data.values.allFinite())
    throw NonFiniteValue(path.string() + ": non-finite value in binary data");
  return data;
}

}  // namespace

DataMatrix load_matrix(const std::filesystem::path& path,
                       const LoadOptions& options) {
  return options.format == MatrixFormat::Csv ? load_csv(path, options)
                                             : load_binary(path);
}

std::string format_double(double value, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
  return buffer;
}

void save_matrix(const std::filesystem::path& path, const DataMatrix& data,
                 const SaveOptions& options) {
  if (options.format == MatrixFormat::Binary) {
    atomic_write(path, [&](std::ostream& out) {
      out.write(kBinaryMagic.data(), kBinaryMagic.size());
      const std::uint64_t rows = static_cast<std::uint64_t>(data.rows());
      const std::uint64_t cols = static_cast<std::uint64_t>(data.cols());
      out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
      out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
      for (Eigen::Index r = 0; r < data.rows(); ++r) {
        const Vector row = data.values.row(r);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(
                      static_cast<std::size_t>(row.size()) * sizeof(double)));
      }
    });
    return;
  }
  atomic_write(path, [&](std::ostream& out) {
    if (options.comment) out << "# " << *options.comment << "\n";
    const bool labels = options.write_labels && data.has_labels();
    const bool domains = options.write_domains && data.has_domains();
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
      for (Eigen::Index c = 0; c < data.cols(); ++c) {
        if (c > 0) out << ',';
        out << format_double(data.values(r, c), options.precision);
      }
      if (labels) out << ',' << data.label(r);
      if (domains)
        out << ',' << (data.domain(r) == Domain::Source ? "source" : "target");
      out << '\n';
    }
  });
}

void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : ".";
  fs::create_directories(dir);
  const fs::path temp =
      dir / (path.filename().string() + ".tmp." +
             std::to_string(static_cast<unsigned long>(::getpid())));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create " + temp.string());
    try {
      writer(out);
    } catch (...) {
      out.close();
      fs::remove(temp);
      throw;
    }
    out.flush();
    if (!out) {
      out.close();
      fs::remove(temp);
      throw Error("write failed for " + temp.string());
    }
  }
  fs::rename(temp, path);
}

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content) {
  atomic_write(path, [&](std::ostream& out) { out << content; });
}

}  // namespace granular
