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

namespace qcond {

/// Numerical thresholds shared by every module.
///
/// Defaults are sized for double precision at the dimensions this library
/// targets (at most 4 per tensor factor, transfer matrices up to 16x16).
/// Relative thresholds are multiplied by max(1, ‖m‖₂) of the operator under
/// test.
struct Tolerances {
  /// An operator is positive iff its minimum eigenvalue ≥ −positivity (relative).
  double positivity = 1e-9;
  /// ‖m − m†‖₂ bound for Hermiticity (relative).
  double hermitian = 1e-9;
  /// |Tr ρ − 1| bound for density operators.
  double trace = 1e-10;
  /// Minimum eigenvalue below which ρ is not faithful (ρ^{-1/2} refused).
  double faithful = 1e-7;
  /// Eigenvector-matrix condition number above which a map is treated as defective.
  double max_condition = 1e8;
  /// Entrywise bound for Σ K†K = I, Tr_B π = I and POVM completeness.
  double trace_preserving = 1e-9;
  /// Kraus extraction keeps Choi eigenvalues above this fraction of the largest.
  double kraus_rank = 1e-10;
  /// ‖[X,Y]‖₂ ≤ commute·‖X‖₂‖Y‖₂ counts as commuting; also the diagonal test for witnesses.
  double commute = 1e-8;
  /// |λ| ≥ 1 − peripheral counts as peripheral; |λ − 1| ≤ peripheral counts as a fixed direction.
  double peripheral = 1e-8;
  /// Orthonormality bound for user supplied bases.
  double orthonormal = 1e-9;

  /// Every threshold multiplied by `factor`, except the condition-number cap.
  Tolerances scaled(double factor) const {
    Tolerances t = *this;
    t.positivity *= factor;
    t.hermitian *= factor;
    t.trace *= factor;
    t.faithful *= factor;
    t.trace_preserving *= factor;
    t.kraus_rank *= factor;
    t.commute *= factor;
    t.peripheral *= factor;
    t.orthonormal *= factor;
    return t;
  }
};

}  // namespace qcond
