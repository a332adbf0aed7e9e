// Copyright 2026 The cellimit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cellimit {

enum class ErrorCode {
  kMarginOutOfRange,
  kDimensionError,
  kCellOutOfRange,
  kResourceLimit,
  kDomainError,
  kSpecError,
  kUnclassifiable,
  kNoConvergence,
  kEmptyInput,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Every library failure is reported as an Error carrying one of the codes
/// above; the C API maps them one-to-one onto cl_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMarginOutOfRange: return "MarginOutOfRange";
    case ErrorCode::kDimensionError: return "DimensionError";
    case ErrorCode::kCellOutOfRange: return "CellOutOfRange";
    case ErrorCode::kResourceLimit: return "ResourceLimit";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kSpecError: return "SpecError";
    case ErrorCode::kUnclassifiable: return "Unclassifiable";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace cellimit
