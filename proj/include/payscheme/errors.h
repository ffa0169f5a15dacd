// Copyright 2026 The payscheme Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAYSCHEME_ERRORS_H_
#define PAYSCHEME_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace payscheme {

enum class ErrorCode {
  // Game and information structure validation.
  kDuplicateNodeId,
  kBadProbabilitySum,
  kDimensionMismatch,
  kLeafIndexMismatch,
  kUnknownNodeId,
  kMissingBranchChoice,
  kInvalidMove,
  // Payment scheme algebra.
  kNotLeftInvertible,
  kTargetNotImplementable,
  // Bounds.
  kNoConstraints,
  // Reductions.
  kPreconditionViolated,
  kNegativeComponent,
  kPatternViolated,
  // Case-study parameters.
  kBadParameters,
  // Numerical failure inside a solver.
  kNumericalBreakdown,
  // Malformed input documents.
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. The code is
// stable and is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::kBadProbabilitySum: return "BadProbabilitySum";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLeafIndexMismatch: return "LeafIndexMismatch";
    case ErrorCode::kUnknownNodeId: return "UnknownNodeId";
    case ErrorCode::kMissingBranchChoice: return "MissingBranchChoice";
    case ErrorCode::kInvalidMove: return "InvalidMove";
    case ErrorCode::kNotLeftInvertible: return "NotLeftInvertible";
    case ErrorCode::kTargetNotImplementable: return "TargetNotImplementable";
    case ErrorCode::kNoConstraints: return "NoConstraints";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNegativeComponent: return "NegativeComponent";
    case ErrorCode::kPatternViolated: return "PatternViolated";
    case ErrorCode::kBadParameters: return "BadParameters";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace payscheme

#endif  // PAYSCHEME_ERRORS_H_
