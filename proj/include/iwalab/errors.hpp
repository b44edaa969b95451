#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iwalab {

enum class ErrorKind {
  DivisionByPrecisionZero,
  FieldMismatch,
  NotAUnit,
  RamifiedFieldUnsupported,
  OutsideConvergenceDomain,
  PrecisionExhausted,
  InvalidField,
  ParseError,
  RootOfUnityUnavailable,
  OddCharacter,
  Assumption2Required,
  PoleAtOne,
  IntegralityViolation,
  ZeroToPrecision,
  IndeterminateAtPrecision,
  PivotAmbiguous,
  HypothesisNotMet,
  InadmissibleTwist,
  ParityMismatch,
  CacheCorrupt,
  FileFormat,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace iwalab
