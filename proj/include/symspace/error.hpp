#pragma once

#include <stdexcept>
#include <string>

namespace symspace {

enum class ErrorCode {
  kDimensionMismatch,
  kAmbientMismatch,
  kNotAnAutomorphism,
  kFormNotPositiveDefinite,
  kDegenerateForm,
  kJacobiFailure,
  kUnsupportedParameters,
  kNotInP,
  kNotLts,
  kDegenerateSubspace,
  kBudgetExhausted,
  kNotRegular,
  kNotNormal,
  kZeroVector,
  kInvalidConfig,
  kInvalidFlat,
  kUnknownPair,
  kParse,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` says which precondition broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symspace
