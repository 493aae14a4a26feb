#include "granular/types.hpp"

#include <algorithm>
#include <string>

#include "granular/errors.hpp"

namespace granular {

int DataMatrix::num_classes() const {
  if (!labels) return 0;
  int max_label = -1;
  for (int l : *labels) max_label = std::max(max_label, l);
  return max_label + 1;
}

void DataMatrix::validate() const {
  if (rows() < 1 || cols() < 1)
    throw ParameterOutOfRange("DataMatrix requires N >= 1 and d >= 1");
  if (!values.allFinite())
    throw NonFiniteValue("DataMatrix contains a non-finite entry");
  if (labels && static_cast<Eigen::Index>(labels->size()) != rows())
    throw DimensionMismatch("label count " + std::to_string(labels->size()) +
                            " != row count " + std::to_string(rows()));
  if (domains && static_cast<Eigen::Index>(domains->size()) != rows())
    throw DimensionMismatch("domain tag count " +
                            std::to_string(domains->size()) +
                            " != row count " + std::to_string(rows()));
  if (labels) {
    for (int l : *labels)
      if (l < kUnlabeled)
        throw ParameterOutOfRange("label " + std::to_string(l) +
                                  " is not a class id or kUnlabeled");
  }
}

DataMatrix concat_domains(const DataMatrix& source, const DataMatrix& target) {
  if (source.rows() == 0) {
    DataMatrix out = target;
    out.domains = std::vector<Domain>(static_cast<std::size_t>(target.rows()),
                                      Domain::Target);
    return out;
  }
  if (target.rows() == 0) {
    DataMatrix out = source;
    out.domains = std::vector<Domain>(static_cast<std::size_t>(source.rows()),
                                      Domain::Source);
    return out;
  }
  if (source.cols() != target.cols())
    throw DimensionMismatch("source has " + std::to_string(source.cols()) +
                            " columns, target has " +
                            std::to_string(target.cols()));
  DataMatrix out;
  out.values.resize(source.rows() + target.rows(), source.cols());
  out.values.topRows(source.rows()) = source.values;
  out.values.bottomRows(target.rows()) = target.values;

  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(out.rows()));
  for (Eigen::Index i = 0; i < source.rows(); ++i)
    labels.push_back(source.label(i));
  for (Eigen::Index i = 0; i < target.rows(); ++i)
    labels.push_back(target.label(i));
  out.labels = std::move(labels);

  std::vector<Domain> domains(static_cast<std::size_t>(out.rows()),
                              Domain::Source);
  std::fill(domains.begin() + source.rows(), domains.end(), Domain::Target);
  out.domains = std::move(domains);
  return out;
}

}  // namespace granular
