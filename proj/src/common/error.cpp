#include "common/error.hpp"

namespace natgvd {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnbalancedDelimiters: return "UnbalancedDelimiters";
    case ErrorCode::MultipleFunctions: return "MultipleFunctions";
    case ErrorCode::DirectiveInBody: return "DirectiveInBody";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::OverlappingEdits: return "OverlappingEdits";
    case ErrorCode::SpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::Inapplicable: return "Inapplicable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::UnresolvedGoto: return "UnresolvedGoto";
    case ErrorCode::DetectorSpawnFailure: return "DetectorSpawnFailure";
    case ErrorCode::ProtocolViolation: return "ProtocolViolation";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::CompilerSpawnFailure: return "CompilerSpawnFailure";
    case ErrorCode::CompileFailure: return "CompileFailure";
    case ErrorCode::ExecutionTimeout: return "ExecutionTimeout";
    case ErrorCode::NotDriverCompatible: return "NotDriverCompatible";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::NoTruePositives: return "NoTruePositives";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::StrictCheckFailed: return "StrictCheckFailed";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool isParseError(ErrorCode code) {
  return code == ErrorCode::UnbalancedDelimiters ||
         code == ErrorCode::MultipleFunctions ||
         code == ErrorCode::DirectiveInBody || code == ErrorCode::NotAFunction;
}

}  // namespace natgvd
