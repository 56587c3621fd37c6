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
#include <random>
#include <vector>

#include "qcond/linalg.hpp"

namespace qcond {

using RealMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Positive, unit-trace operator. Only obtainable through validation.
class DensityOperator {
 public:
  static DensityOperator validate(const ComplexMatrix& m, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

inline DensityOperator validate_density(const ComplexMatrix& m, const Tolerances& tol = {}) {
  return DensityOperator::validate(m, tol);
}

/// Positive effects summing to the identity.
class Povm {
 public:
  static Povm validate(std::vector<ComplexMatrix> effects, const Tolerances& tol = {});

  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  std::size_t dim() const { return static_cast<std::size_t>(effects_.front().rows()); }
  std::size_t size() const { return effects_.size(); }

 private:
  explicit Povm(std::vector<ComplexMatrix> e) : effects_(std::move(e)) {}
  std::vector<ComplexMatrix> effects_;
};

/// Density operator on a two-factor space. The first factor is called A (or C
/// when it plays the role of a reference system), the second B (or A).
class BipartiteState {
 public:
  static BipartiteState validate(const ComplexMatrix& m, BipartiteShape shape,
                                 const Tolerances& tol = {});

  BipartiteShape shape() const { return shape_; }
  const ComplexMatrix& matrix() const { return rho_.matrix(); }
  const DensityOperator& density() const { return rho_; }

  /// Reduced state of the factor that is kept.
  ComplexMatrix marginal(Side kept) const;

 private:
  BipartiteState(DensityOperator rho, BipartiteShape shape) : rho_(std::move(rho)), shape_(shape) {}
  DensityOperator rho_;
  BipartiteShape shape_;
};

struct SchmidtDecomposition {
  RealVector coefficients;  // descending, strictly positive
  ComplexMatrix left;       // columns: orthonormal vectors on the first factor
  ComplexMatrix right;      // columns: orthonormal vectors on the second factor
};

/// psi = Σ c_i left_i ⊗ right_i. Coefficients ≤ 1e-12 are dropped.
SchmidtDecomposition schmidt(const ComplexVector& psi, BipartiteShape shape,
                             const Tolerances& tol = {});

/// ρ_ij with ρ = Σ_ij ρ_ij ⊗ |e_i⟩⟨e_j|, where e are the columns of `basis`
/// (an orthonormal basis of the second factor).
using BlockMatrix = std::vector<std::vector<ComplexMatrix>>;

BlockMatrix blocks(const ComplexMatrix& rho, BipartiteShape shape, const ComplexMatrix& basis,
                   const Tolerances& tol = {});
inline BlockMatrix blocks(const BipartiteState& rho, const ComplexMatrix& basis,
                          const Tolerances& tol = {}) {
  return blocks(rho.matrix(), rho.shape(), basis, tol);
}
ComplexMatrix assemble_blocks(const BlockMatrix& b, const ComplexMatrix& basis);

/// Throws NotOrthonormal unless the columns of `basis` form an orthonormal basis.
void require_orthonormal_basis(const ComplexMatrix& basis, Eigen::Index dim,
                               const Tolerances& tol = {});

// Seeded generators for property tests. Same generator state ⇒ same output.

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
DensityOperator random_density(std::size_t dim, Rng& rng);
ComplexVector random_pure_state(std::size_t dim, Rng& rng);
ComplexVector random_pure_bipartite(BipartiteShape shape, Rng& rng);
BipartiteState random_bipartite_state(BipartiteShape shape, Rng& rng);
Povm random_povm(std::size_t dim, std::size_t effects, Rng& rng);
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// Column-stochastic rows×cols matrix with entries bounded away from zero.
RealMatrix random_stochastic(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace qcond
