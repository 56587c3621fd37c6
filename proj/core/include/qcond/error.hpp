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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcond {

enum class ErrorCode {
  ShapeMismatch,
  NotFinite,
  NotHermitian,
  NotPositive,
  TraceNotOne,
  NotTracePreserving,
  NotFaithful,
  NotOrthonormal,
  NotNormalized,
  NotUnitary,
  NonDiagonalizable,
  NotQC,
  NotCC,
  NotPrimitive,
  ValidationFailed,
  ConflictingWitness,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this exception. `magnitude` is the
// offending quantity (an eigenvalue, a residual, a condition number) so that
// callers can tell a model violation from tolerance noise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = 0.0);

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace qcond
