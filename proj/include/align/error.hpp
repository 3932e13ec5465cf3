// Copyright 2026 The textalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALIGN_ERROR_HPP_
#define ALIGN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace align {

enum class ErrorCode {
  kEmptyText,
  kBudgetExceeded,
  kBackendFailure,
  kLengthMismatch,
  kEmptyBatch,
  kUnknownLabel,
  kOutOfRange,
  kNonpositiveBudget,
  kSpanOutOfBounds,
  kTooShort,
  kConstantInput,
  kSingleClass,
  kEmpty,
  kEmptyDev,
  kParseError,
  kSchemaViolation,
};

// Exit-code categories for the CLI: input/schema problems map to 2,
// scorer-backend problems to 3.
enum class ErrorCategory { kInput, kBackend };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

  ErrorCategory category() const {
    switch (code_) {
      case ErrorCode::kBudgetExceeded:
      case ErrorCode::kBackendFailure:
        return ErrorCategory::kBackend;
      default:
        return ErrorCategory::kInput;
    }
  }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace align

#endif  // ALIGN_ERROR_HPP_
