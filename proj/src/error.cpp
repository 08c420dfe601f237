// Copyright 2026 The Salign Authors. All Rights Reserved.
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

#include "salign/error.hpp"

namespace salign {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNegativeValue: return "NegativeValue";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kEmptyAnnotationSet: return "EmptyAnnotationSet";
    case ErrorCode::kBoxOutOfCanvas: return "BoxOutOfCanvas";
    case ErrorCode::kThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewMethods: return "TooFewMethods";
    case ErrorCode::kNoVotes: return "NoVotes";
    case ErrorCode::kMissingMetricRow: return "MissingMetricRow";
    case ErrorCode::kDepthOutOfRange: return "DepthOutOfRange";
    case ErrorCode::kEmptyRanking: return "EmptyRanking";
    case ErrorCode::kPersistenceOutOfRange: return "PersistenceOutOfRange";
    case ErrorCode::kMalformedCsv: return "MalformedCsv";
    case ErrorCode::kUnknownMethod: return "UnknownMethod";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kNoUsableImages: return "NoUsableImages";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace salign
