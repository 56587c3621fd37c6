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

#include "qcond/objects.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "qcond/error.hpp"

namespace qcond {

DensityOperator DensityOperator::validate(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "density operator");
  const double scale = tolerance_scale(m);
  const double herm = norm2(m - m.adjoint());
  if (herm > tol.hermitian * scale) {
    throw Error(ErrorCode::NotHermitian, "‖ρ − ρ†‖₂ = " + std::to_string(herm), herm);
  }
  ComplexMatrix h = hermitian_part(m);
  const double lo = min_eigenvalue(h);
  if (lo < -tol.positivity * scale) {
    throw Error(ErrorCode::NotPositive, "minimum eigenvalue " + std::to_string(lo), lo);
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorCode::TraceNotOne, "trace " + std::to_string(tr), tr);
  }
  return DensityOperator(std::move(h));
}

Povm Povm::validate(std::vector<ComplexMatrix> effects, const Tolerances& tol) {
  if (effects.empty()) throw Error(ErrorCode::InvalidArgument, "POVM needs at least one effect");
  const Eigen::Index d = effects.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (auto& f : effects) {
    require_square(f, "POVM effect");
    if (f.rows() != d) throw Error(ErrorCode::ShapeMismatch, "POVM effects differ in dimension");
    if (!is_positive(f, tol)) {
      throw Error(ErrorCode::NotPositive, "POVM effect is not positive", min_eigenvalue(f));
    }
    f = hermitian_part(f);
    sum += f;
  }
  const double defect = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > tol.trace_preserving) {
    throw Error(ErrorCode::NotTracePreserving, "Σ F_i − I = " + std::to_string(defect), defect);
  }
  return Povm(std::move(effects));
}

BipartiteState BipartiteState::validate(const ComplexMatrix& m, BipartiteShape shape,
                                        const Tolerances& tol) {
  if (shape.dimA == 0 || shape.dimB == 0 ||
      m.rows() != static_cast<Eigen::Index>(shape.size())) {
    throw Error(ErrorCode::ShapeMismatch, "state dimension does not match bipartite shape");
  }
  return BipartiteState(DensityOperator::validate(m, tol), shape);
}

ComplexMatrix BipartiteState::marginal(Side kept) const {
  return partial_trace(matrix(), shape_, kept == Side::A ? Side::B : Side::A);
}

SchmidtDecomposition schmidt(const ComplexVector& psi, BipartiteShape shape, const Tolerances& tol) {
  const auto dA = static_cast<Eigen::Index>(shape.dimA);
  const auto dB = static_cast<Eigen::Index>(shape.dimB);
  if (psi.size() != dA * dB) throw Error(ErrorCode::ShapeMismatch, "vector length vs shape");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > tol.trace) {
    throw Error(ErrorCode::NotNormalized, "‖ψ‖ = " + std::to_string(norm), norm);
  }
  ComplexMatrix coeffs(dA, dB);
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index k = 0; k < dB; ++k) coeffs(i, k) = psi(i * dB + k);
  Eigen::JacobiSVD<ComplexMatrix> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 1e-12) ++rank;
  return {svd.singularValues().head(rank), svd.matrixU().leftCols(rank),
          svd.matrixV().leftCols(rank).conjugate()};
}

void require_orthonormal_basis(const ComplexMatrix& basis, Eigen::Index dim, const Tolerances& tol) {
  if (basis.rows() != dim || basis.cols() != dim) {
    throw Error(ErrorCode::ShapeMismatch, "basis must have " + std::to_string(dim) + " vectors of length " +
                                              std::to_string(dim));
  }
  const double defect = orthonormality_defect(basis);
  if (defect > tol.orthonormal) {
    throw Error(ErrorCode::NotOrthonormal, "basis Gram defect " + std::to_string(defect), defect);
  }
}

BlockMatrix blocks(const ComplexMatrix& rho, BipartiteShape shape, const ComplexMatrix& basis,
                   const Tolerances& tol) {
  const auto dC = static_cast<Eigen::Index>(shape.dimA);
  const auto dA = static_cast<Eigen::Index>(shape.dimB);
  if (rho.rows() != dC * dA || rho.cols() != dC * dA) {
    throw Error(ErrorCode::ShapeMismatch, "state dimension does not match bipartite shape");
  }
  require_orthonormal_basis(basis, dA, tol);
  // rotate the second factor into the basis, then slice
  const ComplexMatrix u = kron(ComplexMatrix::Identity(dC, dC), basis);
  const ComplexMatrix r = u.adjoint() * rho * u;
  BlockMatrix out(static_cast<std::size_t>(dA), std::vector<ComplexMatrix>(static_cast<std::size_t>(dA)));
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j) {
      ComplexMatrix b(dC, dC);
      for (Eigen::Index c = 0; c < dC; ++c)
        for (Eigen::Index e = 0; e < dC; ++e) b(c, e) = r(c * dA + i, e * dA + j);
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(b);
    }
  return out;
}

ComplexMatrix assemble_blocks(const BlockMatrix& b, const ComplexMatrix& basis) {
  const auto dA = static_cast<Eigen::Index>(b.size());
  const Eigen::Index dC = b.front().front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(dC * dA, dC * dA);
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j)
      out += kron(b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                  basis.col(i) * basis.col(j).adjoint());
  return out;
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

DensityOperator random_density(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const ComplexMatrix g = ginibre(d, d, rng);
  const ComplexMatrix p = g * g.adjoint();
  return DensityOperator::validate(p / p.trace().real());
}

ComplexVector random_pure_state(std::size_t dim, Rng& rng) {
  const ComplexVector v = ginibre(static_cast<Eigen::Index>(dim), 1, rng).col(0);
  return v / v.norm();
}

ComplexVector random_pure_bipartite(BipartiteShape shape, Rng& rng) {
  return random_pure_state(shape.size(), rng);
}

BipartiteState random_bipartite_state(BipartiteShape shape, Rng& rng) {
  return BipartiteState::validate(random_density(shape.size(), rng).matrix(), shape);
}

Povm random_povm(std::size_t dim, std::size_t effects, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> parts;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < effects; ++i) {
    const ComplexMatrix g = ginibre(d, d, rng);
    parts.push_back(g * g.adjoint());
    sum += parts.back();
  }
  const ComplexMatrix s = psd_inv_sqrt(sum);
  for (auto& p : parts) p = hermitian_part(s * p * s);
  return Povm::validate(std::move(parts));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(d, d, rng));
  const ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  ComplexVector phases(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double a = std::abs(r(i, i));
    phases(i) = a > 0.0 ? r(i, i) / a : Complex(1.0);
  }
  return q * phases.asDiagonal();
}

RealMatrix random_stochastic(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  RealMatrix t(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) t(i, j) = uniform(rng);
    t.col(j) /= t.col(j).sum();
  }
  return t;
}

}  // namespace qcond
