/* Copyright 2026 The detassess Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace detassess {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ErrorCode {
  kMalformed,
  kOutOfRange,
  kScoreOutOfRange,
  kMissingDims,
  kDuplicateStem,
  kDanglingReference,
  kUnknownImageId,
  kEmptyManifest,
  kEmptyScene,
  kOverlappingStrata,
  kUnknownStratumImage,
  kValidation,
  kInvalidArgument,
  kIo,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformed: return "Malformed";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kMissingDims: return "MissingDims";
    case ErrorCode::kDuplicateStem: return "DuplicateStem";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kUnknownImageId: return "UnknownImageId";
    case ErrorCode::kEmptyManifest: return "EmptyManifest";
    case ErrorCode::kEmptyScene: return "EmptyScene";
    case ErrorCode::kOverlappingStrata: return "OverlappingStrata";
    case ErrorCode::kUnknownStratumImage: return "UnknownStratumImage";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

// Every failure surfaced by the library. Violations found by
// validate_manifest are data, not errors, and never travel through here.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Semantic violations (bad strata, failed validation) exit 3; anything
  // that stops input from being read at all exits 2.
  int exit_code() const noexcept {
    switch (code_) {
      case ErrorCode::kOverlappingStrata:
      case ErrorCode::kUnknownStratumImage:
      case ErrorCode::kValidation:
        return 3;
      default:
        return 2;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace detassess
