#pragma once

#include <stdexcept>
#include <string>

namespace tvar {

enum class ErrorCode {
  EmptyInput,
  RankMismatch,
  Unbounded,
  EmptyPolyhedron,
  RecessionMismatch,
  NotPointed,
  NonIntegralVertices,
  DegreeOnAffineCurve,
  WeightOutsideCone,
  RankDeficient,
  MixedSignsInParabolicMode,
  GeneratorNotInAlgebra,
  WeightOutsideDilatedNewton,
  NotAffine,
  VerificationFailed,
  TupleLimit,
  WrongAmbient,
  ImproperDivisor,
  InvalidArgument,
  Internal,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::EmptyPolyhedron: return "EmptyPolyhedron";
    case ErrorCode::RecessionMismatch: return "RecessionMismatch";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::NonIntegralVertices: return "NonIntegralVertices";
    case ErrorCode::DegreeOnAffineCurve: return "DegreeOnAffineCurve";
    case ErrorCode::WeightOutsideCone: return "WeightOutsideCone";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::MixedSignsInParabolicMode: return "MixedSignsInParabolicMode";
    case ErrorCode::GeneratorNotInAlgebra: return "GeneratorNotInAlgebra";
    case ErrorCode::WeightOutsideDilatedNewton: return "WeightOutsideDilatedNewton";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::TupleLimit: return "TupleLimit";
    case ErrorCode::WrongAmbient: return "WrongAmbient";
    case ErrorCode::ImproperDivisor: return "ImproperDivisor";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Domain error raised by the kernel. The code is stable and is echoed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tvar
