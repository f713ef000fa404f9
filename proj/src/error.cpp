#include "cda/error.hpp"

namespace cda {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonIntegralInput: return "NonIntegralInput";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::FactorBudgetExceeded: return "FactorBudgetExceeded";
    case ErrorCode::CenterMismatch: return "CenterMismatch";
    case ErrorCode::ExtensionMismatch: return "ExtensionMismatch";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotInCenter: return "NotInCenter";
    case ErrorCode::NotARepresentation: return "NotARepresentation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIntegralGamma: return "NonIntegralGamma";
    case ErrorCode::NonIntegralEntry: return "NonIntegralEntry";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NumericallySingular: return "NumericallySingular";
    case ErrorCode::InconsistentIndices: return "InconsistentIndices";
    case ErrorCode::ResidueFieldTooLarge: return "ResidueFieldTooLarge";
    case ErrorCode::CandidateSearchExhausted: return "CandidateSearchExhausted";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::MismatchReport: return "MismatchReport";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::ZeroGenerator: return "ZeroGenerator";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::UnnormalizedCodebook: return "UnnormalizedCodebook";
    case ErrorCode::NotBracketed: return "NotBracketed";
    case ErrorCode::InvalidFixture: return "InvalidFixture";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cda
