#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace setrisk {

enum class ErrorKind {
  ProbabilitySum,
  OrthantNotContained,
  EmptyInterior,
  MalformedDocument,
  ShapeMismatch,
  StrictUnsupported,
  DimensionMismatch,
  NegativeScale,
  InvalidSpread,
  BadLevel,
  MembershipOnly,
  DimensionNotOne,
  UnknownLaw,
  UnknownDirection,
  EmptyBaseSet,
  EmptyValue,
  OnlyOrthogonalSeparators,
  NotInIntersection,
  SubspaceNotFull,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind. The CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace setrisk
