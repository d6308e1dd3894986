#pragma once

#include <stdexcept>
#include <string>

namespace ncplane {

enum class ErrorKind {
  InvalidInput,
  DegenerateParameters,
  HilbertMismatch,
  DegreeOverflow,
  NormalElementNotFound,
  DegreeBoundTooSmall,
  NotAComplex,
  NotAMonad,
  NotInNLocus,
  Inconclusive,
  BudgetExceeded,
  ShapeMismatch,
  NotOnPointScheme,
  PointsNotDistinct,
  GNotInjective,
  IdenticallyZeroDeterminant,
  IdentityViolated,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  const char* kind_name() const { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace ncplane
