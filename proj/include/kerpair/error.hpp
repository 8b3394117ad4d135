#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kerpair {

enum class ErrorKind {
  CompositeModulusForField,
  RingMismatch,
  NotInvertible,
  NotAField,
  DimensionMismatch,
  AmbientMismatch,
  OracleTooLarge,
  NotFinite,
  IdentityViolated,
  NotSquareFree,
  BaseChangeViolated,
  ConsistencyViolated,
  ParseError,
  MethodUnavailable,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` lets callers branch without
/// parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kerpair
