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

// Shared helpers for the unit tests. Oracles here are written with explicit
// index loops so they do not share code paths with the library.

#include <complex>
#include <vector>

#include "qcond/channel.hpp"
#include "qcond/classify.hpp"

namespace qcond::testing {

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline ComplexMatrix eye(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

/// Σ_{i,j} |ii⟩⟨jj| on ℂ^d ⊗ ℂ^d.
inline ComplexMatrix unnormalized_bell(Eigen::Index d) {
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0;
  return p;
}

/// Σ_k K ρ K† evaluated with plain loops.
inline ComplexMatrix apply_kraus_loops(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
  const Eigen::Index dout = kraus.front().rows(), din = kraus.front().cols();
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  for (const auto& k : kraus)
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index b = 0; b < dout; ++b)
        for (Eigen::Index i = 0; i < din; ++i)
          for (Eigen::Index j = 0; j < din; ++j) out(a, b) += k(a, i) * rho(i, j) * std::conj(k(b, j));
  return out;
}

/// Tr_B with explicit summation, shape (da, db).
inline ComplexMatrix trace_out_second(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline ComplexMatrix trace_out_first(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index k = 0; k < db; ++k)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

/// Is `m` diagonal in the columns of `basis`, relative to its norm?
inline double off_diagonal_mass(const ComplexMatrix& basis, const ComplexMatrix& m) {
  ComplexMatrix r = basis.adjoint() * m * basis;
  r.diagonal().setZero();
  return max_abs(r);
}

// Constructed members of each class, with random bases and stochastic data.
inline Channel random_qc(std::size_t din, std::size_t dout, Rng& rng, ComplexMatrix* f_out = nullptr) {
  const Povm f = random_povm(din, din + 1, rng);
  const ComplexMatrix fb = random_unitary(dout, rng);
  if (f_out) *f_out = fb;
  return qc_channel(f, random_stochastic(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din + 1), rng), fb);
}

inline Channel random_cq(std::size_t din, std::size_t dout, Rng& rng, ComplexMatrix* e_out = nullptr) {
  const ComplexMatrix eb = random_unitary(din, rng);
  if (e_out) *e_out = eb;
  std::vector<DensityOperator> states;
  for (std::size_t j = 0; j < dout + 1; ++j) states.push_back(random_density(dout, rng));
  return cq_channel(eb, random_stochastic(static_cast<Eigen::Index>(dout + 1), static_cast<Eigen::Index>(din), rng), states);
}

inline Channel random_cc(std::size_t din, std::size_t dout, Rng& rng) {
  return cc_channel(random_stochastic(static_cast<Eigen::Index>(dout), static_cast<Eigen::Index>(din), rng), random_unitary(din, rng), random_unitary(dout, rng));
}

}  // namespace qcond::testing
