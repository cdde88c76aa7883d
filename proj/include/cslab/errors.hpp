#pragma once

#include <stdexcept>
#include <string>

namespace cslab {

enum class ErrorCode {
  GroupTooLarge,
  DimensionMismatch,
  SingularFrame,
  BasisMismatch,
  TailTooLarge,
  DegreeOverflow,
  NotDifferentiable,
  QuadratureDiverged,
  PairingDiverged,
  StepUnstable,
  ConfigError,
  FileFormatError,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NotDifferentiable: return "NotDifferentiable";
    case ErrorCode::QuadratureDiverged: return "QuadratureDiverged";
    case ErrorCode::PairingDiverged: return "PairingDiverged";
    case ErrorCode::StepUnstable: return "StepUnstable";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::FileFormatError: return "FileFormatError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_name(code)) + ": " + msg);
}

}  // namespace cslab
