// Copyright 2026 The kcalpose Authors. All Rights Reserved.
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

#include "kcalpose/error.hpp"

namespace kcalpose {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kInconsistentJointCount: return "InconsistentJointCount";
    case ErrorKind::kNonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorKind::kUnmappedJoint: return "UnmappedJoint";
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kMalformedRow: return "MalformedRow";
    case ErrorKind::kDuplicateActivity: return "DuplicateActivity";
    case ErrorKind::kNonPositiveValue: return "NonPositiveValue";
    case ErrorKind::kNoSourceAvailable: return "NoSourceAvailable";
    case ErrorKind::kEmptyBatch: return "EmptyBatch";
    case ErrorKind::kCategoryExceedsLimit: return "CategoryExceedsLimit";
    case ErrorKind::kOutOfRangeLabel: return "OutOfRangeLabel";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kDegenerateInput: return "DegenerateInput";
    case ErrorKind::kInvalidRange: return "InvalidRange";
    case ErrorKind::kUnknownHeldoutActivity: return "UnknownHeldoutActivity";
    case ErrorKind::kEmptyActivity: return "EmptyActivity";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kHeterogeneousOutputs: return "HeterogeneousOutputs";
    case ErrorKind::kMissingPrediction: return "MissingPrediction";
    case ErrorKind::kEmptyFile: return "EmptyFile";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace kcalpose
