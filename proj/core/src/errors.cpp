#include "ufg/errors.hpp"

namespace ufg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotReflexive: return "NotReflexive";
    case ErrorCode::kNotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::kNotTransitive: return "NotTransitive";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kMemberNotInSet: return "MemberNotInSet";
    case ErrorCode::kFamilySampleMismatch: return "FamilySampleMismatch";
    case ErrorCode::kIndifferentAlgorithms: return "IndifferentAlgorithms";
    case ErrorCode::kMissingCell: return "MissingCell";
    case ErrorCode::kUnknownOrientation: return "UnknownOrientation";
    case ErrorCode::kDuplicateCell: return "DuplicateCell";
    case ErrorCode::kAmbiguousRanking: return "AmbiguousRanking";
    case ErrorCode::kScopeMismatch: return "ScopeMismatch";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<Edge> pair)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      pair_(pair) {}

}  // namespace ufg
