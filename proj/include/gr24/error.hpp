#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gr24 {

enum class ErrorCode {
  DegenerateInput,
  PivotTooSmall,
  PluckerViolated,
  RankDeficient,
  NotEquivalent,
  DegenerateProjection,
  AllZeroInput,
  SingularTransform,
  NonFiniteValue,
  InvalidTolerance,
  ParseError,
  UsageError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::PivotTooSmall: return "PivotTooSmall";
    case ErrorCode::PluckerViolated: return "PluckerViolated";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotEquivalent: return "NotEquivalent";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::AllZeroInput: return "AllZeroInput";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

// Domain errors describe the data; the rest describe how the tool was called.
constexpr bool is_domain_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteValue:
    case ErrorCode::InvalidTolerance:
    case ErrorCode::ParseError:
    case ErrorCode::UsageError:
      return false;
    default:
      return true;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string which = {})
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        message_(message),
        which_(std::move(which)) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const std::string& message() const noexcept { return message_; }
  /// Operand that failed ("A" or "B") for RankDeficient; empty otherwise.
  const std::string& which() const noexcept { return which_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string which_;
};

}  // namespace gr24
