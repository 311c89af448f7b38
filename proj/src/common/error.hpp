#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace natgvd {

enum class ErrorCode {
  // parser
  UnbalancedDelimiters,
  MultipleFunctions,
  DirectiveInBody,
  NotAFunction,
  // rewrite
  OverlappingEdits,
  SpanOutOfBounds,
  // transforms / composer
  Inapplicable,
  BudgetExceeded,
  ReplayMismatch,
  // cpg
  UnresolvedGoto,
  // harness
  DetectorSpawnFailure,
  ProtocolViolation,
  Timeout,
  CompilerSpawnFailure,
  CompileFailure,
  ExecutionTimeout,
  NotDriverCompatible,
  EmptyReport,
  NoTruePositives,
  // plumbing
  MalformedInput,
  StrictCheckFailed,
  Io,
  InvalidArgument,
  Internal,
};

std::string_view errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by parse(); the sample is excluded from all downstream processing.
class ParseError : public Error {
 public:
  using Error::Error;
};

bool isParseError(ErrorCode code);

}  // namespace natgvd
