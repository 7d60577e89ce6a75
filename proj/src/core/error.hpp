#pragma once

#include <stdexcept>
#include <string>

namespace fdf {

enum class ErrorKind {
  MissingFace,
  DiamondViolation,
  DegenerateCell,
  NotIncident,
  NotHyperface,
  NumericallyDegenerate,
  NonOrientable,
  NonCubicalCorners,
  DegreeOverflow,
  DegreeMismatch,
  DimensionMismatch,
  ConflictingBC,
  NonPositiveAlpha,
  SolverDivergence,
  ParseError,
  UnsupportedSection,
  InvalidGeometry,
  InvalidArgument,
  IoError,
};

/// Library exception. Every throwing operation tags its failure with an
/// ErrorKind so callers (and the C API) can dispatch without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

const char* error_kind_name(ErrorKind kind);

} // namespace fdf
