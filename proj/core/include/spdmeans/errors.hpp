#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spdmeans {

// Failure buckets. The CLI maps invalid_input to exit code 2,
// precondition_absent to 3, and internal to 1.
enum class ErrorKind { invalid_input, precondition_absent, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define SPDMEANS_DEFINE_ERROR(NAME, KIND)                    \
  struct NAME : Error {                                      \
    explicit NAME(const std::string& what)                   \
        : Error(ErrorKind::KIND, #NAME, what) {}             \
  }

SPDMEANS_DEFINE_ERROR(NotSquare, invalid_input);
SPDMEANS_DEFINE_ERROR(NotSymmetric, invalid_input);
SPDMEANS_DEFINE_ERROR(NotPositiveDefinite, invalid_input);
SPDMEANS_DEFINE_ERROR(DimensionOutOfRange, invalid_input);
SPDMEANS_DEFINE_ERROR(DimensionMismatch, invalid_input);
SPDMEANS_DEFINE_ERROR(SingularTransform, invalid_input);
SPDMEANS_DEFINE_ERROR(WeightOutOfRange, invalid_input);
SPDMEANS_DEFINE_ERROR(ZeroWeight, invalid_input);
SPDMEANS_DEFINE_ERROR(NonpositiveEigenvalue, invalid_input);
SPDMEANS_DEFINE_ERROR(NonpositiveInput, invalid_input);
SPDMEANS_DEFINE_ERROR(NonpositiveEntry, invalid_input);
SPDMEANS_DEFINE_ERROR(LengthMismatch, invalid_input);
SPDMEANS_DEFINE_ERROR(IndexOutOfRange, invalid_input);
SPDMEANS_DEFINE_ERROR(InvalidArgument, invalid_input);
SPDMEANS_DEFINE_ERROR(ParseError, invalid_input);

SPDMEANS_DEFINE_ERROR(DeterminantNotOne, precondition_absent);
SPDMEANS_DEFINE_ERROR(RelationAbsent, precondition_absent);
SPDMEANS_DEFINE_ERROR(NotLogMajorized, precondition_absent);

SPDMEANS_DEFINE_ERROR(ConvergenceFailure, internal);
SPDMEANS_DEFINE_ERROR(ChainOverflow, internal);
SPDMEANS_DEFINE_ERROR(InternalError, internal);

#undef SPDMEANS_DEFINE_ERROR

}  // namespace spdmeans
