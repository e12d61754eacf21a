#pragma once

#include <stdexcept>
#include <string>

namespace kmlat {

// Numeric values are part of the C API (see kmlat.h) and must stay stable.
enum class ErrorCode : int {
  Ok = 0,
  NonPrime = 1,
  DegreeTooLarge = 2,
  DivisionByZero = 3,
  SpecMismatch = 4,
  DegreeWindowExceeded = 5,
  PrecisionExhausted = 6,
  NotAUnit = 7,
  NonInvertible = 8,
  ZeroDeterminant = 9,
  OddCharacteristic = 10,
  WindowTooLarge = 11,
  UnsupportedActionDomain = 12,
  MalformedWord = 13,
  RadiusExceeded = 14,
  SizeCapExceeded = 15,
  NotASubgroup = 16,
  NotFound = 17,
  SearchBudgetExceeded = 18,
  WrongFixedVertex = 19,
  NotAHomomorphism = 20,
  InvalidInput = 21,
  MinUndefined = 22,
  KindInadmissible = 23,
  ParseError = 24,
  Internal = 99,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}
  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace kmlat
