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

#include <cstdint>
#include <vector>

#include "qcond/channel.hpp"

namespace qcond {

/// Outcome of a common-eigenbasis search over a family of Hermitian operators.
struct BasisWitness {
  bool holds = false;
  ComplexMatrix basis;            // columns; empty when !holds
  double max_commutator = 0.0;    // max ‖[X,Y]‖₂ / (‖X‖₂‖Y‖₂) over the family
  double witness_residual = 0.0;  // max relative off-diagonal norm in `basis`
};

/// Pairwise-commutation test plus common eigenbasis extraction from a random
/// real combination of the family, retried up to three times.
BasisWitness common_eigenbasis(const std::vector<ComplexMatrix>& hermitian_family, Eigen::Index dim,
                               const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Hermitian operator basis of 𝔅(ℂ^d): E_aa, E_ab + E_ba, i(E_ab − E_ba).
std::vector<ComplexMatrix> hermitian_operator_basis(Eigen::Index d);

/// Outputs of the channel are all diagonal in one orthonormal basis f (Q_A C_B).
BasisWitness is_qc(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Λ ∘ Δ_e = Λ for some orthonormal basis e (C_A Q_B).
BasisWitness is_cq(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

struct CcWitness {
  bool holds = false;
  ComplexMatrix e_basis;      // input basis (columns)
  ComplexMatrix f_basis;      // output basis (columns)
  RealMatrix cond_prob;       // (k, j) = π_{k|j} = ⟨f_k|Λ(|e_j⟩⟨e_j|)|f_k⟩
  double reconstruction_residual = 0.0;
};

CcWitness is_cc(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

enum class EbStatus { EB, NotEB, UndecidedPPT };

struct PptResult {
  bool ppt = false;
  EbStatus status = EbStatus::NotEB;
  double min_eigenvalue = 0.0;  // of the partially transposed Choi matrix
};

/// PPT of the Choi matrix; decides entanglement breaking only when d_A·d_B ≤ 6.
PptResult ppt_choi(const Channel& ch, const Tolerances& tol = {});

struct Classification {
  bool unital = false;
  PptResult ppt;
  BasisWitness qc;
  BasisWitness cq;
  CcWitness cc;
};

Classification classify(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Λ(ρ) = Σ_{i,j} p_{j|i} Tr(ρF_i) |f_j⟩⟨f_j|.
struct HolevoForm {
  std::vector<ComplexMatrix> effects;  // F_i, a POVM on the input
  RealMatrix cond_prob;                // (j, i) = p_{j|i}, column stochastic
  ComplexMatrix basis;                 // f_j as columns
  double reconstruction_residual = 0.0;

  /// R_i = Σ_j p_{j|i} |f_j⟩⟨f_j|.
  std::vector<ComplexMatrix> states() const;
};

/// Canonical measure-and-prepare form of a QC channel: F_j = Λ^#(|f_j⟩⟨f_j|),
/// R_j = |f_j⟩⟨f_j|, p = I. Throws NotQC otherwise.
HolevoForm holevo_form(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

// Builders for the structured channel families.

void require_stochastic(const RealMatrix& p, const Tolerances& tol = {});
/// π_{B|A} = Σ_ij p_{j|i} F_iᵀ ⊗ |f_j⟩⟨f_j|.
Channel qc_channel(const Povm& effects, const RealMatrix& cond_prob, const ComplexMatrix& f_basis,
                   const Tolerances& tol = {});
/// Λ(ρ) = Σ_ij q_{j|i} ⟨e_i|ρ|e_i⟩ R_j with q(j, i) = q_{j|i}.
Channel cq_channel(const ComplexMatrix& e_basis, const RealMatrix& cond_prob,
                   const std::vector<DensityOperator>& states, const Tolerances& tol = {});
/// Λ(ρ) = Σ_jk π_{k|j} ⟨e_j|ρ|e_j⟩ |f_k⟩⟨f_k| with t(k, j) = π_{k|j}.
Channel cc_channel(const RealMatrix& t, const ComplexMatrix& e_basis, const ComplexMatrix& f_basis,
                   const Tolerances& tol = {});
/// cc_channel with both bases computational: the embedding of p^B = T p^A.
Channel classical_channel(const RealMatrix& t, const Tolerances& tol = {});

/// (id_C ⊗ Λ)ρ_CA = Σ_{k,l} p_{kl} ρ_l ⊗ |f_k⟩⟨f_k| for a QC channel.
struct QcOutputDecomposition {
  bool valid = false;
  ComplexMatrix f_basis;
  std::vector<ComplexMatrix> sigmas;  // σ_l = Σ_ij ρ_ij ⟨j|F_l|i⟩
  RealVector weights;                 // p_l = Tr σ_l
  RealMatrix joint;                   // (k, l) = p_{k|l} p_l
  std::vector<ComplexMatrix> states;  // ρ_l = σ_l / p_l (zero when p_l = 0)
  double min_sigma_eigenvalue = 0.0;
  double reconstruction_residual = 0.0;
};

QcOutputDecomposition decompose_qc_output(const Channel& ch, const HolevoForm& form,
                                          const BipartiteState& rho_ca, const Tolerances& tol = {});
QcOutputDecomposition decompose_qc_output(const Channel& ch, const BipartiteState& rho_ca,
                                          const Tolerances& tol = {}, std::uint64_t seed = 0);

/// A bipartite state is CC iff dephasing it in the product of the common
/// eigenbases of its two block families leaves it unchanged.
struct CcStateWitness {
  bool holds = false;
  ComplexMatrix first_basis;
  ComplexMatrix second_basis;
  double residual = 0.0;          // ‖τ − Δ(τ)‖₂
  double witness_residual = 0.0;  // conditioning of the block-family witnesses
};

CcStateWitness is_cc_state(const ComplexMatrix& tau, BipartiteShape shape, const Tolerances& tol = {},
                           std::uint64_t seed = 0);

struct CcMembership {
  bool member = false;
  bool block_route = false;      // diagonal blocks ρ_ii mutually commute
  bool dephasing_route = false;  // (id_C ⊗ 𝒫_A)ρ is C_C C_A
  bool routes_agree = false;
  std::vector<double> commutator_norms;  // relative, pairs i < j in row-major order
  double max_commutator = 0.0;
  ComplexMatrix e_basis;
  double witness_residual = 0.0;
};

/// Membership of ρ_CA in CC(Λ) for a CC channel; throws NotCC otherwise.
CcMembership cc_membership(const Channel& ch, const BipartiteState& rho_ca, const Tolerances& tol = {},
                           std::uint64_t seed = 0);

/// L = γ(id − 𝒫), 𝒫(ρ) = Σ_i P_i ρ P_i in the basis e.
class DephasingGenerator {
 public:
  static DephasingGenerator validate(const ComplexMatrix& basis, double gamma, const Tolerances& tol = {});

  const ComplexMatrix& basis() const { return basis_; }
  double gamma() const { return gamma_; }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }

 private:
  DephasingGenerator(ComplexMatrix basis, double gamma) : basis_(std::move(basis)), gamma_(gamma) {}
  ComplexMatrix basis_;
  double gamma_;
};

/// 𝒫(ρ) = Σ_i |e_i⟩⟨e_i| ρ |e_i⟩⟨e_i|.
ComplexMatrix dephase(const ComplexMatrix& basis, const ComplexMatrix& rho);
/// (id_C ⊗ 𝒫)ρ with 𝒫 acting on the second factor.
ComplexMatrix partial_dephase(const ComplexMatrix& basis, const ComplexMatrix& rho, BipartiteShape shape);

/// ρ_t = e^{−γt}ρ + (1 − e^{−γt})𝒫(ρ); t = +∞ gives 𝒫(ρ).
DensityOperator decohere(const DephasingGenerator& gen, const DensityOperator& rho, double t);
BipartiteState partial_decohere(const DephasingGenerator& gen, const BipartiteState& rho_ca, double t);
BipartiteState partial_decohere_limit(const DephasingGenerator& gen, const BipartiteState& rho_ca);

}  // namespace qcond
