// errors.cpp -- error-code names and the shared exception type.

#include "orbitcover/errors.hpp"

#include <cstdio>
#include <cstdlib>

namespace orbitcover {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::NotABase: return "NotABase";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::VeryEvenAmbiguity: return "VeryEvenAmbiguity";
    case ErrorCode::LeviMismatch: return "LeviMismatch";
    case ErrorCode::NotMarked: return "NotMarked";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DivisibilityViolation: return "DivisibilityViolation";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::VeryEvenUnsupported: return "VeryEvenUnsupported";
    case ErrorCode::InvalidBlock: return "InvalidBlock";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::UnsupportedMerge: return "UnsupportedMerge";
    case ErrorCode::NonIntegralOrder: return "NonIntegralOrder";
    case ErrorCode::SurjectivityFailure: return "SurjectivityFailure";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NonIntegralCount: return "NonIntegralCount";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

static std::string format_message(ErrorCode code, const std::string& detail,
                                  const std::string& field) {
  std::string msg = error_name(code);
  if (!field.empty()) {
    msg += " at ";
    msg += field;
  }
  msg += ": ";
  msg += detail;
  return msg;
}

Error::Error(ErrorCode code, const std::string& detail, const std::string& field)
    : std::runtime_error(format_message(code, detail, field)),
      code_(code),
      field_(field) {}

void fail(ErrorCode code, const std::string& detail, const std::string& field) {
  throw Error(code, detail, field);
}

void check_internal(bool condition, const char* what) {
  if (!condition) {
    throw Error(ErrorCode::Internal, what);
  }
}

}  // namespace orbitcover
