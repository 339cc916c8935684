// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace corsurf {

enum class ErrorCategory {
  kArgument,
  kIo,
  kFormat,
  kValidation,
  kDegenerate,
  kEmptySurface,
  kTopology,
  kNonConvergence,
  kSchema,
  kInternal,
};

// All library failures are reported through this type. The stage is filled in
// by pipeline orchestration so that CLI users learn where a run stopped.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message, std::string stage = {})
      : std::runtime_error(message), category_(category), stage_(std::move(stage)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorCategory category_;
  std::string stage_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

inline void require(bool condition, ErrorCategory category, const std::string& message) {
  if (!condition) fail(category, message);
}

inline const char* category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kArgument: return "argument";
    case ErrorCategory::kIo: return "io";
    case ErrorCategory::kFormat: return "format";
    case ErrorCategory::kValidation: return "validation";
    case ErrorCategory::kDegenerate: return "degenerate_input";
    case ErrorCategory::kEmptySurface: return "empty_surface";
    case ErrorCategory::kTopology: return "topology";
    case ErrorCategory::kNonConvergence: return "non_convergence";
    case ErrorCategory::kSchema: return "schema";
    case ErrorCategory::kInternal: return "internal";
  }
  return "internal";
}

}  // namespace corsurf
