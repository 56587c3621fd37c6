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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qcond/error.hpp"
#include "qcond/linalg.hpp"
#include "qcond/objects.hpp"
#include "support.hpp"

namespace qcond {
namespace {

using testing::eye;
using testing::mat;
using testing::max_abs;

ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

void expect_code(ErrorCode code, const auto& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Kron, IdentityAndProjectors) {
  EXPECT_EQ(max_abs(kron(eye(2), eye(2)) - eye(4)), 0.0);
  const ComplexMatrix p0 = mat({{1, 0}, {0, 0}}), p1 = mat({{0, 0}, {0, 1}});
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ(max_abs(kron(p0, p1) - expected), 0.0);
}

TEST(Kron, MatchesFourIndexFormula) {
  Rng rng(1);
  const ComplexMatrix a = ginibre(2, 3, rng), b = ginibre(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      for (Eigen::Index r = 0; r < 3; ++r)
        for (Eigen::Index c = 0; c < 2; ++c) EXPECT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(Kron, Associative) {
  Rng rng(2);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng), c = ginibre(2, 2, rng);
    EXPECT_LE(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-12);
  }
}

TEST(PartialTrace, ProductState) {
  Rng rng(3);
  const ComplexMatrix rho = random_density(2, rng).matrix(), sigma = ginibre(3, 3, rng);
  EXPECT_LE(max_abs(partial_trace(kron(rho, sigma), {2, 3}, Side::B) - rho * sigma.trace()), 1e-12);
  EXPECT_LE(max_abs(partial_trace(kron(rho, sigma), {2, 3}, Side::A) - sigma * rho.trace()), 1e-12);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  for (Eigen::Index d = 2; d <= 4; ++d) {
    const ComplexMatrix p = testing::unnormalized_bell(d) / static_cast<double>(d);
    const BipartiteShape s{static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
    EXPECT_LE(max_abs(partial_trace(p, s, Side::A) - eye(d) / static_cast<double>(d)), 1e-15);
  }
}

TEST(PartialTrace, MatchesIndexLoops) {
  Rng rng(4);
  for (int s = 0; s < 10; ++s) {
    const ComplexMatrix h = random_hermitian(6, rng);
    EXPECT_LE(max_abs(partial_trace(h, {2, 3}, Side::B) - testing::trace_out_second(h, 2, 3)), 1e-13);
    EXPECT_LE(max_abs(partial_trace(h, {2, 3}, Side::A) - testing::trace_out_first(h, 2, 3)), 1e-13);
    EXPECT_NEAR(std::abs(partial_trace(h, {2, 3}, Side::B).trace() - h.trace()), 0.0, 1e-13);
  }
}

TEST(PartialTrace, ShapeMismatch) {
  expect_code(ErrorCode::ShapeMismatch, [] { partial_trace(eye(4), {2, 3}, Side::A); });
}

TEST(PartialTranspose, ProductInvolutionAndFullTranspose) {
  Rng rng(5);
  const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
  const BipartiteShape s{2, 3};
  EXPECT_LE(max_abs(partial_transpose(kron(a, b), s, Side::A) - kron(a.transpose(), b)), 1e-15);
  const ComplexMatrix m = ginibre(6, 6, rng);
  EXPECT_EQ(max_abs(partial_transpose(partial_transpose(m, s, Side::B), s, Side::B) - m), 0.0);
  EXPECT_EQ(max_abs(partial_transpose(partial_transpose(m, s, Side::A), s, Side::B) - m.transpose()), 0.0);
  EXPECT_NEAR(std::abs(partial_transpose(m, s, Side::A).trace() - m.trace()), 0.0, 1e-14);
}

TEST(PartialTranspose, BellStateIsNotPpt) {
  // (P⁺/2)^{T_B} = SWAP/2, whose spectrum is {1/2, 1/2, 1/2, −1/2}
  const ComplexMatrix pt = partial_transpose(testing::unnormalized_bell(2) / 2.0, {2, 2}, Side::B);
  EXPECT_NEAR(min_eigenvalue(pt), -0.5, 1e-14);
}

TEST(EigHermitian, DiagonalAndPauliX) {
  const HermitianEigenSystem d = eig_hermitian(mat({{3, 0}, {0, 1}}));
  EXPECT_NEAR(d.values(0), 1.0, 1e-15);
  EXPECT_NEAR(d.values(1), 3.0, 1e-15);
  const HermitianEigenSystem x = eig_hermitian(mat({{0, 1}, {1, 0}}));
  EXPECT_NEAR(x.values(0), -1.0, 1e-15);
  EXPECT_NEAR(x.values(1), 1.0, 1e-15);
  // eigenvectors (1, ∓1)/√2 up to phase
  EXPECT_NEAR(std::abs(x.vectors(0, 0) + x.vectors(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.vectors(0, 1) - x.vectors(1, 1)), 0.0, 1e-15);
}

TEST(EigHermitian, RandomReconstruction) {
  Rng rng(6);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix h = random_hermitian(4, rng);
    const HermitianEigenSystem es = eig_hermitian(h);
    EXPECT_LE(max_abs(es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint() - h), 1e-10);
    EXPECT_LE(orthonormality_defect(es.vectors), 1e-12);
  }
}

TEST(EigHermitian, RejectsNonHermitian) {
  expect_code(ErrorCode::NotHermitian, [] { eig_hermitian(mat({{0, 1}, {0, 0}})); });
}

TEST(EigGeneral, UpperTriangular) {
  const EigenSystem es = eig_general(mat({{3, 1, 2}, {0, -2, 5}, {0, 0, 1}}));
  EXPECT_NEAR(std::abs(es.values(0) - 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(es.values(1) + 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(es.values(2) - 1.0), 0.0, 1e-12);
}

TEST(EigGeneral, CompanionMatrixRoots) {
  // companion matrix of z² − 1
  const EigenSystem es = eig_general(mat({{0, 1}, {1, 0}}));
  EXPECT_NEAR(std::abs(es.values(0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(es.values(1) + 1.0), 0.0, 1e-14);
}

TEST(EigGeneral, JordanBlockIsNonDiagonalizable) {
  expect_code(ErrorCode::NonDiagonalizable, [] { eig_general(mat({{1, 1}, {0, 1}})); });
}

TEST(EigGeneral, BiorthonormalOnRandomAndDegenerateInput) {
  Rng rng(7);
  std::vector<ComplexMatrix> cases{ginibre(5, 5, rng), transpose_permutation(3),
                                   kron(eye(2), mat({{2, 1}, {0, 3}}))};
  for (const auto& m : cases) {
    const EigenSystem es = eig_general(m);
    const Eigen::Index n = m.rows();
    EXPECT_LE(max_abs(es.left.adjoint() * es.right - eye(n)), 1e-10);
    EXPECT_LE(max_abs(m * es.right - es.right * es.values.asDiagonal()), 1e-10 * norm2(m));
    EXPECT_LE(max_abs(es.left.adjoint() * m - es.values.asDiagonal() * es.left.adjoint()), 1e-10 * norm2(m));
  }
}

TEST(EigGeneral, AgreesWithHermitianSolver) {
  Rng rng(8);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix h = random_hermitian(4, rng);
    std::vector<double> a, b;
    const ComplexVector g = eig_general(h).values;
    for (Eigen::Index i = 0; i < 4; ++i) a.push_back(g(i).real());
    const RealVector e = eig_hermitian(h).values;
    b.assign(e.data(), e.data() + 4);
    std::sort(a.begin(), a.end());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)], 1e-10);
  }
}

TEST(Eigenvalues, OrderedByModulus) {
  const ComplexVector v = eigenvalues(mat({{0.5, 0}, {0, -0.9}}));
  EXPECT_NEAR(v(0).real(), -0.9, 1e-15);
  EXPECT_NEAR(v(1).real(), 0.5, 1e-15);
}

TEST(PsdSqrt, DiagonalAndIdentity) {
  EXPECT_LE(max_abs(psd_sqrt(mat({{4, 0}, {0, 9}})) - mat({{2, 0}, {0, 3}})), 1e-15);
  EXPECT_LE(max_abs(psd_sqrt(eye(3)) - eye(3)), 1e-15);
  EXPECT_LE(max_abs(psd_inv_sqrt(mat({{4, 0}, {0, 9}})) - mat({{0.5, 0}, {0, 1.0 / 3.0}})), 1e-15);
}

TEST(PsdSqrt, RandomSelfConsistency) {
  Rng rng(9);
  for (Eigen::Index d : {2, 4, 9, 16}) {
    const ComplexMatrix b = ginibre(d, d, rng);
    const ComplexMatrix m = b.adjoint() * b;
    const ComplexMatrix s = psd_sqrt(m);
    EXPECT_LE(max_abs(s * s - m), 1e-9);
    EXPECT_LE(max_abs(s - s.adjoint()), 1e-12);
    const ComplexMatrix r = psd_inv_sqrt(m);
    EXPECT_LE(max_abs(r * m * r - eye(d)), 1e-6);
  }
}

TEST(PsdSqrt, Errors) {
  expect_code(ErrorCode::NotPositive, [] { psd_sqrt(mat({{1, 0}, {0, -0.1}})); });
  expect_code(ErrorCode::NotFaithful, [] { psd_inv_sqrt(mat({{1, 0}, {0, 1e-9}})); });
}

TEST(Vectorization, RowMajorAndTransposePermutation) {
  const ComplexMatrix x = mat({{1, 2}, {3, 4}});
  const ComplexVector v = vec(x);
  EXPECT_EQ(v(1), Complex(2.0));
  EXPECT_EQ(v(2), Complex(3.0));
  EXPECT_EQ(max_abs(unvec(v, 2, 2) - x), 0.0);
  EXPECT_EQ(max_abs(unvec(transpose_permutation(2) * v, 2, 2) - x.transpose()), 0.0);
  // vec(K X L) = (K ⊗ Lᵀ) vec(X)
  Rng rng(10);
  const ComplexMatrix k = ginibre(3, 2, rng), m = ginibre(2, 2, rng), l = ginibre(2, 3, rng);
  EXPECT_LE((vec(k * m * l) - kron(k, l.transpose()) * vec(m)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(NullSpace, FindsKernelOrNothing) {
  const ComplexMatrix m = mat({{1, 1}, {1, 1}});
  const ComplexMatrix ns = null_space(m, 1, 1e-12);
  ASSERT_EQ(ns.cols(), 1);
  EXPECT_LE(max_abs(m * ns), 1e-14);
  EXPECT_EQ(null_space(eye(2), 1, 1e-12).cols(), 0);
}

}  // namespace
}  // namespace qcond
