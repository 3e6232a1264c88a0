#pragma once

#include <stdexcept>
#include <string>

namespace tbhfk {

enum class ErrorCode {
  // Rejected input.
  ZeroDenominator,
  EvenP,
  UnitP,
  NotCoprime,
  InvalidInput,
  // Internal consistency failures. Any of these means the construction or
  // the code is wrong, never that the input was bad.
  TraceBroken,
  UnexpectedPeriodicDomain,
  DifferentSectors,
  NotDivisible,
  NoSymmetricShift,
  EmptyHomology,
  DSquaredNonzero,
  NotDivisibleByV,
  MismatchAgainstParallelograms,
  InternalCheckFailed,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::EvenP: return "EvenP";
    case ErrorCode::UnitP: return "UnitP";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::TraceBroken: return "TraceBroken";
    case ErrorCode::UnexpectedPeriodicDomain: return "UnexpectedPeriodicDomain";
    case ErrorCode::DifferentSectors: return "DifferentSectors";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NoSymmetricShift: return "NoSymmetricShift";
    case ErrorCode::EmptyHomology: return "EmptyHomology";
    case ErrorCode::DSquaredNonzero: return "DSquaredNonzero";
    case ErrorCode::NotDivisibleByV: return "NotDivisibleByV";
    case ErrorCode::MismatchAgainstParallelograms: return "MismatchAgainstParallelograms";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
  }
  return "Unknown";
}

inline bool is_input_error(ErrorCode c) {
  return c == ErrorCode::ZeroDenominator || c == ErrorCode::EvenP || c == ErrorCode::UnitP ||
         c == ErrorCode::NotCoprime || c == ErrorCode::InvalidInput;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tbhfk
