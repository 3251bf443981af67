#include "xmlstream/error.hpp"

namespace xmlstream {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedToken: return "malformed-token";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::NotWellFormed: return "not-well-formed";
    case ErrorCode::NotBinary: return "not-binary";
    case ErrorCode::NotFullBinary: return "not-full-binary";
    case ErrorCode::ReservedLabel: return "reserved-label";
    case ErrorCode::PassAlreadyOpen: return "pass-already-open";
    case ErrorCode::WriteToInput: return "write-to-input";
    case ErrorCode::NoContent: return "no-content";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::NegativeMemory: return "negative-memory";
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::UnknownLabel: return "unknown-label";
    case ErrorCode::DuplicateRule: return "duplicate-rule";
    case ErrorCode::NoRule: return "no-rule-for-label";
    case ErrorCode::StreamDesync: return "stream-desync";
    case ErrorCode::CriticalOverflow: return "critical-overflow";
    case ErrorCode::UnfilledDummy: return "unfilled-dummy";
    case ErrorCode::OutOfRange: return "out-of-range";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace xmlstream
