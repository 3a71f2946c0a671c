#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ufg/edge.hpp"

namespace ufg {

enum class ErrorCode {
  kNotReflexive,
  kNotAntisymmetric,
  kNotTransitive,
  kCycleDetected,
  kEmptyInput,
  kUniverseTooLarge,
  kSearchBudgetExceeded,
  kMemberNotInSet,
  kFamilySampleMismatch,
  kIndifferentAlgorithms,
  kMissingCell,
  kUnknownOrientation,
  kDuplicateCell,
  kAmbiguousRanking,
  kScopeMismatch,
  kDegenerate,
  kParseError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception. `code()` is the
// stable machine-readable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<Edge> pair = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Edge>& pair() const noexcept { return pair_; }

 private:
  ErrorCode code_;
  std::optional<Edge> pair_;
};

}  // namespace ufg
