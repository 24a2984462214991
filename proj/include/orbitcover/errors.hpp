// errors.hpp -- error codes and the exception type shared by all modules.
//
// Every failure mode of the library is announced through Error, which carries
// a machine-readable code, a human-readable detail string, and (for input
// validation) the dotted path of the offending field.

#pragma once

#include <stdexcept>
#include <string>

namespace orbitcover {

enum class ErrorCode {
  // rootsys
  InvalidRank,
  NotABase,
  NotInSpan,
  // diagram
  DimensionMismatch,
  VeryEvenAmbiguity,
  LeviMismatch,
  // twist
  NotMarked,
  BudgetExceeded,
  DivisibilityViolation,
  // orbits
  ParityViolation,
  SumMismatch,
  VeryEvenUnsupported,
  InvalidBlock,
  PreconditionViolated,
  ChainMismatch,
  UnsupportedFamily,
  // counting
  UnsupportedMerge,
  NonIntegralOrder,
  SurjectivityFailure,
  OrderMismatch,
  NonIntegralCount,
  // cli
  ParseError,
  ValidationError,
  // catch-all for broken internal invariants (never expected on valid input)
  Internal,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, const std::string& field = "");

  ErrorCode code() const { return code_; }
  // Dotted field path ("setup.half_blocks[2]") for parse/validation errors;
  // empty for computational errors.
  const std::string& field() const { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

// Throw helper; keeps call sites one-liners.
[[noreturn]] void fail(ErrorCode code, const std::string& detail,
                       const std::string& field = "");

// Internal invariant check: like assert but active in all build types, since
// a silent wrong count is worse than an abort.
void check_internal(bool condition, const char* what);

}  // namespace orbitcover
