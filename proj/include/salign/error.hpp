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

#ifndef SALIGN_ERROR_HPP_
#define SALIGN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace salign {

// Values mirror salign_status in salign.h; keep the two in sync.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kLengthMismatch = 2,
  kNegativeValue = 3,
  kNonFiniteValue = 4,
  kDegenerateInput = 5,
  kZeroMass = 6,
  kEmptyAnnotationSet = 7,
  kBoxOutOfCanvas = 8,
  kThresholdOutOfRange = 9,
  kDimensionMismatch = 10,
  kTooFewMethods = 11,
  kNoVotes = 12,
  kMissingMetricRow = 13,
  kDepthOutOfRange = 14,
  kEmptyRanking = 15,
  kPersistenceOutOfRange = 16,
  kMalformedCsv = 17,
  kUnknownMethod = 18,
  kIoFailure = 19,
  kNoUsableImages = 20,
  kInternal = 21,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the core is reported as an Error carrying a typed code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace salign

#endif  // SALIGN_ERROR_HPP_
