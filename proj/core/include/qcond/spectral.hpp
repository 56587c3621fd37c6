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

/// Λ^τ = Λ ∘ T with T the computational-basis transposition. Positive and
/// trace preserving, generally not completely positive.
LinearMap lambda_tau(const Channel& ch);

/// Λ^τ_U(ρ) = Ū Λ(ρᵀ) Uᵀ.
LinearMap lambda_tau_u(const Channel& ch, const ComplexMatrix& u, const Tolerances& tol = {});

/// Throws ValidationFailed unless the map is square, trace preserving and maps
/// sampled pure states to positive operators.
void require_positive_trace_preserving(const LinearMap& map, const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Iterates the lazy map (id + Φ)/2 from I/d. The limit is the projection of
/// I/d onto the λ = 1 eigenspace, reached geometrically even when Φ has other
/// peripheral eigenvalues.
struct PowerIteration {
  ComplexMatrix rho;
  std::size_t iterations = 0;
  bool converged = false;
  double last_step = 0.0;    // max entrywise change of the final step
  double contraction = 0.0;  // max |(1 + λ)/2| over λ ≠ 1
};

PowerIteration power_iteration_fixed_point(const LinearMap& map, const Tolerances& tol = {},
                                           std::size_t max_iterations = 100000);

struct FixedPoint {
  DensityOperator rho;
  std::size_t fixed_space_dim = 1;
  bool unique = true;
  double residual = 0.0;  // ‖Φ(ρ*) − ρ*‖₂
  std::size_t power_iterations = 0;
  bool power_converged = false;
  /// max entrywise distance between the eigensolver and power-iteration
  /// fixed points; NaN when not compared
  double route_agreement = 0.0;
};

/// Perron–Frobenius fixed point. With a simple λ = 1 the eigenvector is used and
/// cross-checked against power iteration (ConflictingWitness beyond 1e-8);
/// otherwise the power-iteration limit from I/d is returned and flagged non-unique.
FixedPoint fixed_point(const LinearMap& map, const Tolerances& tol = {}, std::uint64_t seed = 0);

struct SpectralReport {
  ComplexVector eigenvalues;  // λ₀ = 1 first, then by decreasing modulus
  FixedPoint fixed_point;
  std::size_t peripheral_count = 0;
  std::size_t fixed_space_dim = 0;
  bool irreducible = false;
  bool primitive = false;
  double second_modulus = 0.0;  // |λ₁|
  double spectral_gap = 1.0;    // 1 − |λ₁|
  bool sampled_irreducible = false;
  bool sampled_primitive = false;
  std::size_t primitivity_index = 0;  // largest k needed over the probes, 0 if none
};

/// Spectrum, fixed point and irreducible/primitive flags, each flag
/// cross-checked against its sampled defining test (ConflictingWitness on
/// disagreement).
SpectralReport spectral_report(const LinearMap& map, const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Biorthonormal eigen-system Φ(ρ) = Σ λ_α X_α Tr(Y_α† ρ). The λ = 1 block is
/// arranged as X₀ = ρ*, Y₀ = I and traceless X for the rest of the block.
struct DampingBasis {
  ComplexVector lambdas;
  std::vector<ComplexMatrix> x;
  std::vector<ComplexMatrix> y;
  std::size_t fixed_block = 1;
  double condition = 1.0;
  double biorthogonality_residual = 0.0;
  double reconstruction_residual = 0.0;
};

/// Throws NonDiagonalizable when no damping basis exists.
DampingBasis damping_basis(const LinearMap& map, const Tolerances& tol = {}, std::uint64_t seed = 0);

/// π_{B|A} = Σ λ_α Y_α† ⊗ X_α for a damping basis of Λ^τ; throws ValidationFailed
/// if it does not reproduce the channel's Choi matrix within 1e-8.
ConditionalState conditional_expansion(const Channel& ch, const DampingBasis& basis, const Tolerances& tol = {});

struct BroadcastCertificate {
  DensityOperator rho_star;
  BipartiteState rho_ab;
  ComplexMatrix zeta;  // ρ_AB − ρ* ⊗ ρ*, or ρ_AB − ρ* ⊗ Uᵀρ*Ū in spectrum mode
  bool fixed_point_unique = true;
  bool spectrum_mode = false;
  ComplexMatrix unitary;              // identity unless spectrum_mode
  double marginal_residual_a = 0.0;   // ‖Tr_B ρ_AB − ρ*‖ entrywise
  double marginal_residual_b = 0.0;   // ‖Tr_A ρ_AB − Uᵀ ρ* Ū‖ entrywise
  double zeta_residual_a = 0.0;       // ‖Tr_A ζ‖ entrywise
  double zeta_residual_b = 0.0;       // ‖Tr_B ζ‖ entrywise
  double conjugation_mismatch = 0.0;  // ‖Tr_A ρ_AB − U ρ* U†‖ entrywise
  RealVector spectrum_a;
  RealVector spectrum_b;
  double spectrum_residual = 0.0;
};

/// ρ_AB = (ρ*^{1/2} ⊗ I) π_{B|A} (ρ*^{1/2} ⊗ I) with ρ* the fixed point of Λ^τ.
BroadcastCertificate broadcast_state(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

/// Same construction with the fixed point of Λ^τ_U.
BroadcastCertificate spectrum_broadcast(const Channel& ch, const ComplexMatrix& u, const Tolerances& tol = {},
                                        std::uint64_t seed = 0);

struct AsymptoticChannel {
  Channel channel;        // ρ ↦ ρ'_* Tr ρ
  SpectralReport report;  // of Λ itself
};

/// Λ∞ = lim Λ^r for a primitive Λ; throws NotPrimitive otherwise.
AsymptoticChannel asymptotic_channel(const Channel& ch, const Tolerances& tol = {}, std::uint64_t seed = 0);

}  // namespace qcond
