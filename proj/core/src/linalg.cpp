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

#include "qcond/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcond/error.hpp"

namespace qcond {

namespace {

void require_shape(const ComplexMatrix& m, BipartiteShape shape) {
  const auto n = static_cast<Eigen::Index>(shape.size());
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", bipartite shape needs " + std::to_string(n) + "x" + std::to_string(n));
  }
}

bool spectral_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

bool is_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be a non-empty square matrix");
  }
  if (!is_finite(m)) throw Error(ErrorCode::NotFinite, std::string(what) + " has NaN/Inf entries");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteShape shape, Side traced) {
  require_shape(m, shape);
  const auto dA = static_cast<Eigen::Index>(shape.dimA);
  const auto dB = static_cast<Eigen::Index>(shape.dimB);
  if (traced == Side::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
    for (Eigen::Index i = 0; i < dA; ++i)
      for (Eigen::Index j = 0; j < dA; ++j)
        for (Eigen::Index k = 0; k < dB; ++k) out(i, j) += m(i * dB + k, j * dB + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
  for (Eigen::Index k = 0; k < dB; ++k)
    for (Eigen::Index l = 0; l < dB; ++l)
      for (Eigen::Index i = 0; i < dA; ++i) out(k, l) += m(i * dB + k, i * dB + l);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteShape shape, Side side) {
  require_shape(m, shape);
  const auto dA = static_cast<Eigen::Index>(shape.dimA);
  const auto dB = static_cast<Eigen::Index>(shape.dimB);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < dA; ++i)
    for (Eigen::Index j = 0; j < dA; ++j)
      for (Eigen::Index k = 0; k < dB; ++k)
        for (Eigen::Index l = 0; l < dB; ++l) {
          const Complex v = m(i * dB + k, j * dB + l);
          if (side == Side::A)
            out(j * dB + k, i * dB + l) = v;
          else
            out(i * dB + l, j * dB + k) = v;
        }
  return out;
}

double norm2(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

double tolerance_scale(const ComplexMatrix& m) { return std::max(1.0, norm2(m)); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianEigenSystem eig_hermitian(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "eig_hermitian input");
  const double defect = norm2(m - m.adjoint());
  if (defect > tol.hermitian * tolerance_scale(m)) {
    throw Error(ErrorCode::NotHermitian, "‖m − m†‖₂ = " + std::to_string(defect), defect);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexVector eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenvalue input");
  Eigen::ComplexEigenSolver<ComplexMatrix> ces(m, false);
  std::vector<Complex> vals(ces.eigenvalues().data(),
                            ces.eigenvalues().data() + ces.eigenvalues().size());
  std::sort(vals.begin(), vals.end(), spectral_order);
  return Eigen::Map<ComplexVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

EigenSystem eig_general(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "eig_general input");
  const Eigen::Index n = m.rows();
  const double scale = tolerance_scale(m);
  // Eigenvalues closer than this are resolved together through a shared
  // eigenspace; defective pairs split by ~sqrt(eps) and land in one cluster.
  const double cluster_tol = 1e-6 * scale;
  const double null_tol = 1e-6 * scale;

  const ComplexVector vals = eigenvalues(m);

  std::vector<std::vector<Eigen::Index>> clusters;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (taken[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> members{i};
    taken[static_cast<std::size_t>(i)] = true;
    // transitive closure so chains of close eigenvalues share a cluster
    for (std::size_t q = 0; q < members.size(); ++q)
      for (Eigen::Index j = 0; j < n; ++j)
        if (!taken[static_cast<std::size_t>(j)] &&
            std::abs(vals(members[q]) - vals(j)) <= cluster_tol) {
          taken[static_cast<std::size_t>(j)] = true;
          members.push_back(j);
        }
    clusters.push_back(std::move(members));
  }

  ComplexMatrix right(n, n), left(n, n);
  ComplexVector out_vals(n);
  Eigen::Index col = 0;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  for (const auto& cluster : clusters) {
    const auto k = static_cast<Eigen::Index>(cluster.size());
    Complex mu = 0.0;
    for (auto idx : cluster) mu += vals(idx);
    mu /= static_cast<double>(k);

    const ComplexMatrix shifted = m - mu * id;
    ComplexMatrix xb = null_space(shifted, k, null_tol);
    ComplexMatrix wb = null_space(shifted.adjoint(), k, null_tol);
    if (xb.size() == 0 || wb.size() == 0) {
      throw Error(ErrorCode::NonDiagonalizable,
                  "eigenvalue " + std::to_string(mu.real()) + "+" + std::to_string(mu.imag()) +
                      "i has algebraic multiplicity " + std::to_string(k) +
                      " but a smaller eigenspace");
    }
    const ComplexMatrix gram = wb.adjoint() * xb;
    const double gram_cond = condition_number(gram);
    if (!(gram_cond <= tol.max_condition)) {
      throw Error(ErrorCode::NonDiagonalizable,
                  "left/right eigenspace cross-Gram condition " + std::to_string(gram_cond),
                  gram_cond);
    }
    ComplexMatrix yb = wb * gram.inverse().adjoint();  // yb† xb = I

    ComplexVector block_vals = ComplexVector::Constant(k, mu);
    if (k > 1) {
      const ComplexMatrix restricted = yb.adjoint() * m * xb;
      const Complex mean = restricted.trace() / static_cast<double>(k);
      const ComplexMatrix spread = restricted - mean * ComplexMatrix::Identity(k, k);
      if (spread.norm() > 1e-12 * scale) {
        Eigen::ComplexEigenSolver<ComplexMatrix> inner(restricted);
        const ComplexMatrix s = inner.eigenvectors();
        const double s_cond = condition_number(s);
        if (!(s_cond <= tol.max_condition)) {
          throw Error(ErrorCode::NonDiagonalizable,
                      "near-degenerate eigenvalue cluster is defective", s_cond);
        }
        xb = xb * s;
        yb = yb * s.inverse().adjoint();
        block_vals = inner.eigenvalues();
      } else {
        block_vals = ComplexVector::Constant(k, mean);
      }
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      const double nx = xb.col(c).norm();
      right.col(col) = xb.col(c) / nx;
      left.col(col) = yb.col(c) * nx;
      out_vals(col) = block_vals(c);
      ++col;
    }
  }

  const double cond = condition_number(right);
  if (!(cond <= tol.max_condition)) {
    throw Error(ErrorCode::NonDiagonalizable,
                "eigenvector matrix condition number " + std::to_string(cond), cond);
  }
  const double residual = (m * right - right * out_vals.asDiagonal()).colwise().norm().maxCoeff();
  if (residual > 1e-8 * scale) {
    throw Error(ErrorCode::NonDiagonalizable,
                "eigenvector residual " + std::to_string(residual), residual);
  }
  return {out_vals, right, left, cond};
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_positive(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || !is_finite(m)) return false;
  const double scale = tolerance_scale(m);
  if (norm2(m - m.adjoint()) > tol.hermitian * scale) return false;
  return min_eigenvalue(m) >= -tol.positivity * scale;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const auto es = eig_hermitian(m, tol);
  const double floor = -tol.positivity * tolerance_scale(m);
  if (es.values(0) < floor) {
    throw Error(ErrorCode::NotPositive,
                "minimum eigenvalue " + std::to_string(es.values(0)), es.values(0));
  }
  const RealVector roots = es.values.cwiseMax(0.0).cwiseSqrt();
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix psd_inv_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const auto es = eig_hermitian(m, tol);
  if (es.values(0) < tol.faithful) {
    if (es.values(0) < -tol.positivity * tolerance_scale(m)) {
      throw Error(ErrorCode::NotPositive,
                  "minimum eigenvalue " + std::to_string(es.values(0)), es.values(0));
    }
    throw Error(ErrorCode::NotFaithful,
                "minimum eigenvalue " + std::to_string(es.values(0)) + " below faithfulness threshold",
                es.values(0));
  }
  const RealVector inv = es.values.cwiseSqrt().cwiseInverse();
  return es.vectors * inv.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix null_space(const ComplexMatrix& m, Eigen::Index dim, double threshold) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index n = m.cols();
  if (dim > n) return {};
  // JacobiSVD returns min(rows, cols) singular values; square inputs here.
  for (Eigen::Index i = n - dim; i < s.size(); ++i)
    if (s(i) > threshold) return {};
  return svd.matrixV().rightCols(dim);
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b) v(a * m.cols() + b) = m(a, b);
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "unvec length mismatch");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index a = 0; a < rows; ++a)
    for (Eigen::Index b = 0; b < cols; ++b) m(a, b) = v(a * cols + b);
  return m;
}

ComplexMatrix transpose_permutation(Eigen::Index d) {
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
  return p;
}

ComplexVector basis_ket(Eigen::Index d, Eigen::Index i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexMatrix matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

double orthonormality_defect(const ComplexMatrix& q) {
  const ComplexMatrix g = q.adjoint() * q - ComplexMatrix::Identity(q.cols(), q.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace qcond
