#pragma once

#include <stdexcept>
#include <string>

namespace xmlstream {

enum class ErrorCode {
  MalformedToken,
  EmptyInput,
  NotWellFormed,
  NotBinary,
  NotFullBinary,
  ReservedLabel,
  PassAlreadyOpen,
  WriteToInput,
  NoContent,
  BudgetExceeded,
  NegativeMemory,
  SyntaxError,
  UnknownLabel,
  DuplicateRule,
  NoRule,
  StreamDesync,
  CriticalOverflow,
  UnfilledDummy,
  OutOfRange,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace xmlstream
