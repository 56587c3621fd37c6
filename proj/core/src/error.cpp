// Copyright 2026 The qcond Authors
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

#include "qcond/error.hpp"

namespace qcond {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorCode::NotQC: return "NotQC";
    case ErrorCode::NotCC: return "NotCC";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::ConflictingWitness: return "ConflictingWitness";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, double magnitude)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      magnitude_(magnitude) {}

}  // namespace qcond
