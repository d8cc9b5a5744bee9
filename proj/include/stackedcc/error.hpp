#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stackedcc {

enum class ErrorCode {
  DimensionMismatch,
  NoRealRoot,
  NoAdmissibleRoot,
  InfeasibleEmbedding,
  DegenerateGap,
  RepeatedIndex,
  CollidingBodies,
  RegionViolation,
  DomainError,
  BracketFailure,
  MassSignFailure,
  DomainViolation,
  NoEnclosure,
  BudgetExhausted,
  ConstructionMismatch,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::NoAdmissibleRoot: return "NoAdmissibleRoot";
    case ErrorCode::InfeasibleEmbedding: return "InfeasibleEmbedding";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::RepeatedIndex: return "RepeatedIndex";
    case ErrorCode::CollidingBodies: return "CollidingBodies";
    case ErrorCode::RegionViolation: return "RegionViolation";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::MassSignFailure: return "MassSignFailure";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NoEnclosure: return "NoEnclosure";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::ConstructionMismatch: return "ConstructionMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stackedcc
