#pragma once

#include <stdexcept>
#include <string>

namespace polyprof {

enum class ErrorCode {
  InvalidArgument,
  BadArch,
  DimMismatch,
  ParseError,
  Infeasible,
  Unbounded,
  Degenerate,
  DegenerateHull,
  DegeneratePoints,
  TooLarge,
  NotInterior,
  EmptyProfile,
  NumericalFailure,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:  return "InvalidArgument";
    case ErrorCode::BadArch:          return "BadArch";
    case ErrorCode::DimMismatch:      return "DimMismatch";
    case ErrorCode::ParseError:       return "ParseError";
    case ErrorCode::Infeasible:       return "Infeasible";
    case ErrorCode::Unbounded:        return "Unbounded";
    case ErrorCode::Degenerate:       return "Degenerate";
    case ErrorCode::DegenerateHull:   return "DegenerateHull";
    case ErrorCode::DegeneratePoints: return "DegeneratePoints";
    case ErrorCode::TooLarge:         return "TooLarge";
    case ErrorCode::NotInterior:      return "NotInterior";
    case ErrorCode::EmptyProfile:     return "EmptyProfile";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::IoError:          return "IoError";
  }
  return "Unknown";
}

}  // namespace polyprof
