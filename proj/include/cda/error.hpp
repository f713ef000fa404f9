#pragma once

#include <stdexcept>
#include <string>

namespace cda {

enum class ErrorCode {
  DivisionByZero,
  NonIntegralInput,
  ZeroInput,
  FactorBudgetExceeded,
  CenterMismatch,
  ExtensionMismatch,
  ZeroInverse,
  NotRational,
  AlgebraMismatch,
  NotInCenter,
  NotARepresentation,
  InvalidArgument,
  NonIntegralGamma,
  NonIntegralEntry,
  RankDeficient,
  NotASquare,
  NotDivisible,
  NumericallySingular,
  InconsistentIndices,
  ResidueFieldTooLarge,
  CandidateSearchExhausted,
  BudgetExhausted,
  UnsupportedPrime,
  MismatchReport,
  NotAMember,
  ZeroGenerator,
  BoxTooSmall,
  DuplicatePoints,
  UnnormalizedCodebook,
  NotBracketed,
  InvalidFixture,
  Io,
};

const char* error_code_name(ErrorCode code);

/// Every failure in the library is reported through this type; `code()`
/// identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cda
