// Copyright 2026 The dpkick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dpk {

enum class ErrorCode {
  kSumMismatch,
  kFloorViolation,
  kBadEta,
  kDimensionMismatch,
  kShapeUnderflow,
  kBoundaryPoint,
  kBadBeta,
  kNonPositiveArgument,
  kDegenerateConfig,
  kBadTau,
  kBadAccuracy,
  kAlreadyExpended,
  kBadAction,
  kShapeMismatch,
  kNonFiniteLoss,
  kMissingTeacherData,
  kMissingCheckpoint,
  kMisalignedEpochs,
  kInvalidArgument,
  kIoError,
};

const char* error_code_name(ErrorCode code);

/// Exception type used throughout the library. Carries a stable error code so
/// the C boundary can translate failures into status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSumMismatch: return "SumMismatch";
    case ErrorCode::kFloorViolation: return "FloorViolation";
    case ErrorCode::kBadEta: return "BadEta";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kShapeUnderflow: return "ShapeUnderflow";
    case ErrorCode::kBoundaryPoint: return "BoundaryPoint";
    case ErrorCode::kBadBeta: return "BadBeta";
    case ErrorCode::kNonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::kDegenerateConfig: return "DegenerateConfig";
    case ErrorCode::kBadTau: return "BadTau";
    case ErrorCode::kBadAccuracy: return "BadAccuracy";
    case ErrorCode::kAlreadyExpended: return "AlreadyExpended";
    case ErrorCode::kBadAction: return "BadAction";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kMissingTeacherData: return "MissingTeacherData";
    case ErrorCode::kMissingCheckpoint: return "MissingCheckpoint";
    case ErrorCode::kMisalignedEpochs: return "MisalignedEpochs";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace dpk
