#pragma once

#include <stdexcept>
#include <string>

namespace granular {

// Base class for all toolkit errors. CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GRANULAR_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                      \
  public:                                                          \
    explicit Name(const std::string& what) : Error(what) {}        \
  }

GRANULAR_DEFINE_ERROR(DimensionMismatch);
GRANULAR_DEFINE_ERROR(ParameterOutOfRange);
GRANULAR_DEFINE_ERROR(MissingLabels);
GRANULAR_DEFINE_ERROR(MissingNeighborMap);
GRANULAR_DEFINE_ERROR(EmptyDomain);
GRANULAR_DEFINE_ERROR(AllColumnsDegenerate);
GRANULAR_DEFINE_ERROR(NoPositiveEigenvalues);
GRANULAR_DEFINE_ERROR(EmptySource);
GRANULAR_DEFINE_ERROR(ZeroDirection);
GRANULAR_DEFINE_ERROR(InsufficientData);
GRANULAR_DEFINE_ERROR(ClusterCollapse);
GRANULAR_DEFINE_ERROR(EmptyScores);
GRANULAR_DEFINE_ERROR(MissingPayload);
GRANULAR_DEFINE_ERROR(ParseError);
GRANULAR_DEFINE_ERROR(NonFiniteValue);

#undef GRANULAR_DEFINE_ERROR

}  // namespace granular
