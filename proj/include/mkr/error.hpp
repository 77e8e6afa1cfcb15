#pragma once

#include <stdexcept>
#include <string>

namespace mkr {

// Every failure the library can signal. Input-shaped problems (bad bases,
// out-of-range labels, wrong ground set...) and computation-shaped problems
// (torsion, span deficits...) share one exception type; the CLI maps the
// code to its exit status.
enum class ErrorCode {
  InvalidParameters,
  UnequalBasisSizes,
  ExchangeAxiomViolation,
  EmptyBasisSet,
  LoopyMatroid,
  NotNested,
  NotAFlat,
  GroundSetMismatch,
  WrongTotalDegree,
  VarSetMismatch,
  NonUnitConstantTerm,
  NonExactDivision,
  TorsionDetected,
  CombinatorialExplosion,
  RankMismatch,
  SpanDeficit,
  InconsistentPairs,
  SingularPairing,
  NonIntegralLambda,
  InternalError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::UnequalBasisSizes: return "UnequalBasisSizes";
    case ErrorCode::ExchangeAxiomViolation: return "ExchangeAxiomViolation";
    case ErrorCode::EmptyBasisSet: return "EmptyBasisSet";
    case ErrorCode::LoopyMatroid: return "LoopyMatroid";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::NotAFlat: return "NotAFlat";
    case ErrorCode::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorCode::WrongTotalDegree: return "WrongTotalDegree";
    case ErrorCode::VarSetMismatch: return "VarSetMismatch";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::NonExactDivision: return "NonExactDivision";
    case ErrorCode::TorsionDetected: return "TorsionDetected";
    case ErrorCode::CombinatorialExplosion: return "CombinatorialExplosion";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::SpanDeficit: return "SpanDeficit";
    case ErrorCode::InconsistentPairs: return "InconsistentPairs";
    case ErrorCode::SingularPairing: return "SingularPairing";
    case ErrorCode::NonIntegralLambda: return "NonIntegralLambda";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const { return code_; }

  // True when the failure is attributable to caller input rather than an
  // internal computation going wrong; drives the CLI exit code (2 vs 1).
  bool is_input_error() const {
    switch (code_) {
      case ErrorCode::InvalidParameters:
      case ErrorCode::UnequalBasisSizes:
      case ErrorCode::ExchangeAxiomViolation:
      case ErrorCode::EmptyBasisSet:
      case ErrorCode::LoopyMatroid:
      case ErrorCode::NotNested:
      case ErrorCode::NotAFlat:
      case ErrorCode::GroundSetMismatch:
      case ErrorCode::WrongTotalDegree:
      case ErrorCode::VarSetMismatch:
      case ErrorCode::CombinatorialExplosion:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void check(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace mkr
