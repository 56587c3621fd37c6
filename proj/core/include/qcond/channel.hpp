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

#include <cstddef>
#include <vector>

#include "qcond/linalg.hpp"
#include "qcond/objects.hpp"

namespace qcond {

/// Linear map 𝔅(𝓗_in) → 𝔅(𝓗_out) held as its transfer matrix
/// (dim_out² × dim_in², row-major vectorization). Not necessarily positive.
class LinearMap {
 public:
  LinearMap(std::size_t dim_in, std::size_t dim_out, ComplexMatrix transfer);

  /// Inverse of choi(): π = Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|) on 𝓗_in ⊗ 𝓗_out.
  static LinearMap from_choi(const ComplexMatrix& choi, std::size_t dim_in, std::size_t dim_out);
  static LinearMap identity(std::size_t d);
  /// ρ ↦ ρᵀ in the computational basis.
  static LinearMap transposition(std::size_t d);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const ComplexMatrix& transfer() const { return transfer_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  ComplexMatrix choi() const;
  /// this ∘ first
  LinearMap compose(const LinearMap& first) const;
  LinearMap power(unsigned r) const;

  bool is_trace_preserving(const Tolerances& tol = {}) const;
  bool is_unital(const Tolerances& tol = {}) const;
  bool is_completely_positive(const Tolerances& tol = {}) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  ComplexMatrix transfer_;
};

/// Quantum conditional probability: a positive operator on 𝓗_A ⊗ 𝓗_B whose
/// partial trace over the non-conditioning factor is the identity on the
/// conditioning one. `given() == Side::A` is π_{B|A}, Side::B is π_{A|B}.
class ConditionalState {
 public:
  static ConditionalState validate(const ComplexMatrix& m, BipartiteShape shape,
                                   Side given = Side::A, const Tolerances& tol = {});

  BipartiteShape shape() const { return shape_; }
  Side given() const { return given_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ConditionalState(ComplexMatrix m, BipartiteShape shape, Side given)
      : matrix_(std::move(m)), shape_(shape), given_(given) {}
  ComplexMatrix matrix_;
  BipartiteShape shape_;
  Side given_;
};

/// CPTP map held simultaneously as Kraus set, Choi matrix and transfer matrix.
/// All three are computed at construction; instances are immutable.
class Channel {
 public:
  static Channel from_kraus(std::vector<ComplexMatrix> kraus, const Tolerances& tol = {});
  static Channel from_choi(const ComplexMatrix& choi, std::size_t dim_in, std::size_t dim_out,
                           const Tolerances& tol = {});

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& choi() const { return choi_; }
  const ComplexMatrix& transfer() const { return map_.transfer(); }
  const LinearMap& as_map() const { return map_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  Channel(std::vector<ComplexMatrix> kraus, ComplexMatrix choi, LinearMap map);
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
  LinearMap map_;
};

// Common channels.
Channel identity_channel(std::size_t d);
Channel unitary_channel(const ComplexMatrix& u, const Tolerances& tol = {});
/// ρ ↦ (1−p)ρ + p·Tr(ρ)·I/d.
Channel depolarizing_channel(std::size_t d, double p);
/// ρ ↦ σ·Tr ρ.
Channel constant_channel(std::size_t dim_in, const DensityOperator& sigma);
/// Complete dephasing in the orthonormal basis given by the columns of `basis`.
Channel dephasing_channel(const ComplexMatrix& basis, const Tolerances& tol = {});
/// Kraus operators G_i S^{-1/2} with Ginibre G_i and S = Σ G_i†G_i.
Channel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count, Rng& rng);

/// Kraus operators of the eigendecomposition of a positive Choi matrix; keeps
/// eigenvalues above tol.kraus_rank × the largest one. Each operator's largest
/// entry is made real and positive so the output is phase-deterministic.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, BipartiteShape shape,
                                           const Tolerances& tol = {});

ConditionalState conditional_from_channel(const Channel& ch);
Channel channel_from_conditional(const ConditionalState& pi, const Tolerances& tol = {});

/// Λ(ρ) = Tr_A[π_{B|A}·(ρᵀ ⊗ I_B)].
ComplexMatrix apply_conditional(const ConditionalState& pi, const ComplexMatrix& rho);

/// (id_C ⊗ Λ)ρ_CA; the channel acts on the second factor.
BipartiteState extend_apply(const Channel& ch, const BipartiteState& rho, const Tolerances& tol = {});

/// Λ^# with Tr[Λ^#(a)·ρ] = Tr[a·Λ(ρ)].
LinearMap dual(const LinearMap& map);

struct Unitalization {
  ComplexMatrix v;  // Λ(I_A)
  LinearMap tilde;  // V^{-1/2} Λ(·) V^{-1/2}; unital, generally not trace preserving
  bool completely_positive = false;
};

Unitalization unitalize(const Channel& ch, const Tolerances& tol = {});

/// Λ_{A|B} = Λ̃^#: σ ↦ Λ^#(V^{-1/2} σ V^{-1/2}) with V = Λ(I_A). Satisfies Λ_{A|B}(V) = I_A.
Channel reverse_channel(const Channel& ch, const Tolerances& tol = {});

/// ρ_AB = (ρ_A^{1/2} ⊗ I) π_{B|A} (ρ_A^{1/2} ⊗ I).
BipartiteState compound_state(const ConditionalState& pi, const DensityOperator& rho_a,
                              const Tolerances& tol = {});

}  // namespace qcond
