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

#include "qcond/channel.hpp"

namespace qcond {

/// Both conditional probabilities of a joint state with faithful marginals:
/// π_{B|A} = (ρ_A^{-1/2} ⊗ I) ρ_AB (ρ_A^{-1/2} ⊗ I) and
/// π_{A|B} = (I ⊗ ρ_B^{-1/2}) ρ_AB (I ⊗ ρ_B^{-1/2}).
struct JointStateAnalysis {
  BipartiteState rho_ab;
  DensityOperator rho_a;
  DensityOperator rho_b;
  ConditionalState pi_b_given_a;
  ConditionalState pi_a_given_b;
  double reconstruction_residual = 0.0;  // compound_state(π_{B|A}, ρ_A) vs ρ_AB, entrywise
};

/// Throws NotFaithful naming the offending marginal.
JointStateAnalysis conditionals_from_joint(const BipartiteState& rho_ab, const Tolerances& tol = {});

struct BayesResiduals {
  /// ‖π_{A|B} − (ρ_A^{1/2} ⊗ ρ_B^{-1/2}) π_{B|A} (ρ_A^{1/2} ⊗ ρ_B^{-1/2})‖₂
  double pi_pi = 0.0;
  /// ‖(ρ_A^{1/2} ⊗ I) π_{B|A} (ρ_A^{1/2} ⊗ I) − (I ⊗ ρ_B^{1/2}) π_{A|B} (I ⊗ ρ_B^{1/2})‖₂
  double symmetric = 0.0;
};

BayesResiduals bayes_identity_check(const JointStateAnalysis& analysis, const Tolerances& tol = {});

/// State-dependent reverse of Λ: B → A with
/// Λ_{A|B}(σ) = ρ_A^{1/2} [Λ^#(ρ_B^{-1/2} σᵀ ρ_B^{-1/2})]ᵀ ρ_A^{1/2}, where ρ_B = Λ(ρ_Aᵀ).
/// With this ρ_B the map is trace preserving and Λ_{A|B}(ρ_Bᵀ) = ρ_A.
struct Recovery {
  Channel channel;
  ComplexMatrix rho_b;
  double forward_residual = 0.0;   // ‖Λ(ρ_Aᵀ) − ρ_B‖ entrywise
  double backward_residual = 0.0;  // ‖Λ_{A|B}(ρ_Bᵀ) − ρ_A‖ entrywise
};

Recovery recovery_channel(const Channel& ch, const DensityOperator& rho_a, const Tolerances& tol = {});

}  // namespace qcond
