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

// Dense complex linear algebra on tensor-product spaces.
//
// Vectorization convention used by every superoperator in the library:
// vec(X)[a·cols + b] = X(a, b) (row-major stacking), so that
// vec(K X L) = (K ⊗ Lᵀ) vec(X) and the transfer matrix of ρ ↦ KρK† is K ⊗ K̄.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qcond/tolerance.hpp"

namespace qcond {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Side { A, B };

/// Factor dimensions of 𝓗_A ⊗ 𝓗_B.
struct BipartiteShape {
  std::size_t dimA = 1;
  std::size_t dimB = 1;

  std::size_t size() const { return dimA * dimB; }
  bool operator==(const BipartiteShape&) const = default;
};

struct HermitianEigenSystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns
};

/// Right/left eigen-system of a diagonalizable matrix: M·right = right·diag(values),
/// left† M = diag(values) left†, and left†·right = I.
struct EigenSystem {
  ComplexVector values;
  ComplexMatrix right;
  ComplexMatrix left;
  double condition = 1.0;  // of the column-normalized right eigenvector matrix
};

bool is_finite(const ComplexMatrix& m);
void require_square(const ComplexMatrix& m, const char* what);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the factor named by `traced`: Side::B gives the A marginal.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteShape shape, Side traced);

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteShape shape, Side side);

/// Spectral norm (largest singular value).
double norm2(const ComplexMatrix& m);
double trace_norm(const ComplexMatrix& m);
double condition_number(const ComplexMatrix& m);

/// max(1, ‖m‖₂): the scale relative tolerances are multiplied with.
double tolerance_scale(const ComplexMatrix& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

HermitianEigenSystem eig_hermitian(const ComplexMatrix& m, const Tolerances& tol = {});

/// Eigenvalues ordered by decreasing modulus (ties: real part, then imaginary
/// part, descending). Throws NonDiagonalizable when the matrix has a defective
/// eigenvalue or its eigenvector matrix is too ill-conditioned to use.
EigenSystem eig_general(const ComplexMatrix& m, const Tolerances& tol = {});

/// Eigenvalues only, same ordering as eig_general; never throws on defective input.
ComplexVector eigenvalues(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& hermitian);
bool is_positive(const ComplexMatrix& m, const Tolerances& tol = {});

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol = {});
ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis (columns) of the `dim` least singular directions of m,
/// or an empty matrix if fewer than `dim` singular values are ≤ threshold.
ComplexMatrix null_space(const ComplexMatrix& m, Eigen::Index dim, double threshold);

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

/// Permutation P on d² with vec(Xᵀ) = P·vec(X).
ComplexMatrix transpose_permutation(Eigen::Index d);

ComplexVector basis_ket(Eigen::Index d, Eigen::Index i);
ComplexMatrix matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j);

/// ‖Q†Q − I‖ entrywise maximum over the columns of q.
double orthonormality_defect(const ComplexMatrix& q);

}  // namespace qcond
