// Copyright 2026 The quadqc Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadqc {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotHermitian,
  kNotUnitary,
  kInvalidSpin,
  kForbiddenTransition,
  kUnknownTransition,
  kUncalibratable,
  kNyquist,
  kNonUnitarySequence,
  kAmbiguousReadout,
  // sequence-language codes
  kSyntax,
  kUnknownKeyword,
  kDuplicateAcquire,
  kAcquireNotLast,
  kLambdaUndeclared,
  kMissingSystem,
  kBadValue,
  kIo,
};

/// Stable machine-readable name, e.g. "E_FORBIDDEN_TRANSITION".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error raised by the sequence-language front end; carries a 1-based source
/// location.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(code, message), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace quadqc
