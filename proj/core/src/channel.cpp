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

#include "qcond/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcond/error.hpp"

namespace qcond {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix swap_factors(std::size_t dim_a, std::size_t dim_b) {
  const Eigen::Index da = idx(dim_a), db = idx(dim_b);
  ComplexMatrix s = ComplexMatrix::Zero(da * db, da * db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) s(b * da + a, a * db + b) = 1.0;
  return s;
}

ComplexMatrix transfer_from_kraus(const std::vector<ComplexMatrix>& kraus) {
  const ComplexMatrix& k0 = kraus.front();
  ComplexMatrix t = ComplexMatrix::Zero(k0.rows() * k0.rows(), k0.cols() * k0.cols());
  for (const auto& k : kraus) t += kron(k, k.conjugate());
  return t;
}

void normalize_phase(ComplexMatrix& k) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  // first entry (row-major scan) of maximal modulus, up to rounding
  for (Eigen::Index r = 0; r < k.rows(); ++r)
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      const double a = std::abs(k(r, c));
      if (a > best_abs * (1.0 + 1e-9)) {
        best_abs = a;
        best = r * k.cols() + c;
      }
    }
  if (best_abs <= 0.0) return;
  const Complex z = k(best / k.cols(), best % k.cols());
  k *= std::conj(z) / std::abs(z);
}

}  // namespace

LinearMap::LinearMap(std::size_t dim_in, std::size_t dim_out, ComplexMatrix transfer)
    : dim_in_(dim_in), dim_out_(dim_out), transfer_(std::move(transfer)) {
  if (dim_in == 0 || dim_out == 0 || transfer_.rows() != idx(dim_out * dim_out) ||
      transfer_.cols() != idx(dim_in * dim_in)) {
    throw Error(ErrorCode::ShapeMismatch, "transfer matrix does not match map dimensions");
  }
  if (!is_finite(transfer_)) throw Error(ErrorCode::NotFinite, "transfer matrix has NaN/Inf");
}

LinearMap LinearMap::from_choi(const ComplexMatrix& choi, std::size_t dim_in, std::size_t dim_out) {
  const Eigen::Index da = idx(dim_in), db = idx(dim_out);
  if (choi.rows() != da * db || choi.cols() != da * db) {
    throw Error(ErrorCode::ShapeMismatch, "Choi matrix does not match map dimensions");
  }
  ComplexMatrix t(db * db, da * da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l) t(k * db + l, i * da + j) = choi(i * db + k, j * db + l);
  return LinearMap(dim_in, dim_out, std::move(t));
}

LinearMap LinearMap::identity(std::size_t d) {
  return LinearMap(d, d, ComplexMatrix::Identity(idx(d * d), idx(d * d)));
}

LinearMap LinearMap::transposition(std::size_t d) {
  return LinearMap(d, d, transpose_permutation(idx(d)));
}

ComplexMatrix LinearMap::apply(const ComplexMatrix& x) const {
  if (x.rows() != idx(dim_in_) || x.cols() != idx(dim_in_)) {
    throw Error(ErrorCode::ShapeMismatch, "input is " + std::to_string(x.rows()) + "x" +
                                              std::to_string(x.cols()) + ", map expects " +
                                              std::to_string(dim_in_));
  }
  return unvec(transfer_ * vec(x), idx(dim_out_), idx(dim_out_));
}

ComplexMatrix LinearMap::choi() const {
  const Eigen::Index da = idx(dim_in_), db = idx(dim_out_);
  ComplexMatrix c(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l) c(i * db + k, j * db + l) = transfer_(k * db + l, i * da + j);
  return c;
}

LinearMap LinearMap::compose(const LinearMap& first) const {
  if (first.dim_out_ != dim_in_) throw Error(ErrorCode::ShapeMismatch, "compose: dimension mismatch");
  return LinearMap(first.dim_in_, dim_out_, transfer_ * first.transfer_);
}

LinearMap LinearMap::power(unsigned r) const {
  if (dim_in_ != dim_out_) throw Error(ErrorCode::ShapeMismatch, "power of a non-square map");
  ComplexMatrix result = ComplexMatrix::Identity(transfer_.rows(), transfer_.cols());
  ComplexMatrix base = transfer_;
  while (r > 0) {
    if (r & 1u) result = result * base;
    base = base * base;
    r >>= 1u;
  }
  return LinearMap(dim_in_, dim_out_, std::move(result));
}

bool LinearMap::is_trace_preserving(const Tolerances& tol) const {
  const ComplexVector id_out = vec(ComplexMatrix::Identity(idx(dim_out_), idx(dim_out_)));
  const ComplexVector id_in = vec(ComplexMatrix::Identity(idx(dim_in_), idx(dim_in_)));
  return (transfer_.transpose() * id_out - id_in).cwiseAbs().maxCoeff() <= tol.trace_preserving;
}

bool LinearMap::is_unital(const Tolerances& tol) const {
  if (dim_in_ != dim_out_) return false;
  const ComplexVector id_out = vec(ComplexMatrix::Identity(idx(dim_out_), idx(dim_out_)));
  const ComplexVector id_in = vec(ComplexMatrix::Identity(idx(dim_in_), idx(dim_in_)));
  return (transfer_ * id_in - id_out).cwiseAbs().maxCoeff() <= tol.trace_preserving;
}

bool LinearMap::is_completely_positive(const Tolerances& tol) const { return is_positive(choi(), tol); }

ConditionalState ConditionalState::validate(const ComplexMatrix& m, BipartiteShape shape, Side given,
                                            const Tolerances& tol) {
  if (shape.dimA == 0 || shape.dimB == 0 || m.rows() != idx(shape.size()) || m.cols() != idx(shape.size())) {
    throw Error(ErrorCode::ShapeMismatch, "conditional state dimension does not match shape");
  }
  if (!is_finite(m)) throw Error(ErrorCode::NotFinite, "conditional state has NaN/Inf");
  const double scale = tolerance_scale(m);
  const double herm = norm2(m - m.adjoint());
  if (herm > tol.hermitian * scale) throw Error(ErrorCode::NotHermitian, "π not Hermitian", herm);
  ComplexMatrix h = hermitian_part(m);
  const double lo = min_eigenvalue(h);
  if (lo < -tol.positivity * scale) {
    throw Error(ErrorCode::NotPositive, "π has eigenvalue " + std::to_string(lo), lo);
  }
  const ComplexMatrix reduced = partial_trace(h, shape, given == Side::A ? Side::B : Side::A);
  const double defect =
      (reduced - ComplexMatrix::Identity(reduced.rows(), reduced.cols())).cwiseAbs().maxCoeff();
  if (defect > tol.trace_preserving) {
    throw Error(ErrorCode::NotTracePreserving,
                "partial trace of π differs from identity by " + std::to_string(defect), defect);
  }
  return ConditionalState(std::move(h), shape, given);
}

Channel::Channel(std::vector<ComplexMatrix> kraus, ComplexMatrix choi, LinearMap map)
    : dim_in_(map.dim_in()),
      dim_out_(map.dim_out()),
      kraus_(std::move(kraus)),
      choi_(std::move(choi)),
      map_(std::move(map)) {}

Channel Channel::from_kraus(std::vector<ComplexMatrix> kraus, const Tolerances& tol) {
  if (kraus.empty()) throw Error(ErrorCode::InvalidArgument, "empty Kraus set");
  const Eigen::Index rows = kraus.front().rows(), cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw Error(ErrorCode::ShapeMismatch, "Kraus operators differ in shape");
    }
    if (!is_finite(k)) throw Error(ErrorCode::NotFinite, "Kraus operator has NaN/Inf");
    sum += k.adjoint() * k;
  }
  const double defect = (sum - ComplexMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (defect > tol.trace_preserving) {
    throw Error(ErrorCode::NotTracePreserving, "Σ K†K − I = " + std::to_string(defect), defect);
  }
  LinearMap map(static_cast<std::size_t>(cols), static_cast<std::size_t>(rows), transfer_from_kraus(kraus));
  ComplexMatrix choi = map.choi();
  return Channel(std::move(kraus), std::move(choi), std::move(map));
}

Channel Channel::from_choi(const ComplexMatrix& choi, std::size_t dim_in, std::size_t dim_out,
                           const Tolerances& tol) {
  const BipartiteShape shape{dim_in, dim_out};
  const ConditionalState pi = ConditionalState::validate(choi, shape, Side::A, tol);
  auto kraus = kraus_from_choi(pi.matrix(), shape, tol);
  LinearMap map = LinearMap::from_choi(pi.matrix(), dim_in, dim_out);
  return Channel(std::move(kraus), pi.matrix(), std::move(map));
}

ComplexMatrix Channel::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != idx(dim_in_) || rho.cols() != idx(dim_in_)) {
    throw Error(ErrorCode::ShapeMismatch, "channel input must be " + std::to_string(dim_in_) + "x" +
                                              std::to_string(dim_in_));
  }
  ComplexMatrix out = ComplexMatrix::Zero(idx(dim_out_), idx(dim_out_));
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

Channel identity_channel(std::size_t d) {
  return Channel::from_kraus({ComplexMatrix::Identity(idx(d), idx(d))});
}

Channel unitary_channel(const ComplexMatrix& u, const Tolerances& tol) {
  require_square(u, "unitary");
  const double defect = orthonormality_defect(u);
  if (defect > tol.orthonormal) throw Error(ErrorCode::NotUnitary, "U†U − I = " + std::to_string(defect), defect);
  return Channel::from_kraus({u}, tol);
}

Channel depolarizing_channel(std::size_t d, double p) {
  const double dd = static_cast<double>(d * d);
  if (d < 2 || !(p >= 0.0 && p <= dd / (dd - 1.0))) {
    throw Error(ErrorCode::InvalidArgument, "depolarizing parameter out of the CP range", p);
  }
  const Eigen::Index n = idx(d);
  ComplexVector psi = ComplexVector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i * n + i) = 1.0;
  const ComplexMatrix choi = (1.0 - p) * psi * psi.adjoint() +
                             (p / static_cast<double>(d)) * ComplexMatrix::Identity(n * n, n * n);
  return Channel::from_choi(choi, d, d);
}

Channel constant_channel(std::size_t dim_in, const DensityOperator& sigma) {
  const Eigen::Index n = idx(dim_in);
  return Channel::from_choi(kron(ComplexMatrix::Identity(n, n), sigma.matrix()), dim_in, sigma.dim());
}

Channel dephasing_channel(const ComplexMatrix& basis, const Tolerances& tol) {
  require_orthonormal_basis(basis, basis.rows(), tol);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) kraus.push_back(basis.col(i) * basis.col(i).adjoint());
  return Channel::from_kraus(std::move(kraus), tol);
}

Channel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count, Rng& rng) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix s = ComplexMatrix::Zero(idx(dim_in), idx(dim_in));
  for (std::size_t i = 0; i < kraus_count; ++i) {
    g.push_back(ginibre(idx(dim_out), idx(dim_in), rng));
    s += g.back().adjoint() * g.back();
  }
  const ComplexMatrix si = psd_inv_sqrt(s);
  for (auto& k : g) k = k * si;
  return Channel::from_kraus(std::move(g));
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, BipartiteShape shape,
                                           const Tolerances& tol) {
  const Eigen::Index da = idx(shape.dimA), db = idx(shape.dimB);
  if (choi.rows() != da * db || choi.cols() != da * db) {
    throw Error(ErrorCode::ShapeMismatch, "Choi matrix does not match shape");
  }
  const auto es = eig_hermitian(choi, tol);
  const double top = es.values(es.values.size() - 1);
  const double lo = es.values(0);
  if (lo < -tol.positivity * tolerance_scale(choi)) {
    throw Error(ErrorCode::NotPositive, "Choi matrix has eigenvalue " + std::to_string(lo), lo);
  }
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index n = es.values.size() - 1; n >= 0; --n) {
    const double lambda = es.values(n);
    if (!(lambda > tol.kraus_rank * top)) break;
    ComplexMatrix k(db, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index b = 0; b < db; ++b) k(b, i) = std::sqrt(lambda) * es.vectors(i * db + b, n);
    normalize_phase(k);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw Error(ErrorCode::NotPositive, "Choi matrix has no positive eigenvalue", top);
  return kraus;
}

ConditionalState conditional_from_channel(const Channel& ch) {
  return ConditionalState::validate(ch.choi(), {ch.dim_in(), ch.dim_out()}, Side::A);
}

Channel channel_from_conditional(const ConditionalState& pi, const Tolerances& tol) {
  const auto shape = pi.shape();
  if (pi.given() == Side::A) return Channel::from_choi(pi.matrix(), shape.dimA, shape.dimB, tol);
  // π_{A|B} encodes a channel B → A; reorder to B ⊗ A before reading the Choi matrix
  const ComplexMatrix s = swap_factors(shape.dimA, shape.dimB);
  return Channel::from_choi(s * pi.matrix() * s.adjoint(), shape.dimB, shape.dimA, tol);
}

ComplexMatrix apply_conditional(const ConditionalState& pi, const ComplexMatrix& rho) {
  if (pi.given() != Side::A) throw Error(ErrorCode::InvalidArgument, "apply_conditional expects π_{B|A}");
  const auto shape = pi.shape();
  if (rho.rows() != idx(shape.dimA) || rho.cols() != idx(shape.dimA)) {
    throw Error(ErrorCode::ShapeMismatch, "input dimension does not match π");
  }
  const ComplexMatrix lifted = kron(rho.transpose(), ComplexMatrix::Identity(idx(shape.dimB), idx(shape.dimB)));
  return partial_trace(pi.matrix() * lifted, shape, Side::A);
}

BipartiteState extend_apply(const Channel& ch, const BipartiteState& rho, const Tolerances& tol) {
  const auto shape = rho.shape();
  if (shape.dimB != ch.dim_in()) {
    throw Error(ErrorCode::ShapeMismatch, "second factor of the state does not match channel input");
  }
  const ComplexMatrix id_c = ComplexMatrix::Identity(idx(shape.dimA), idx(shape.dimA));
  const Eigen::Index n_out = idx(shape.dimA * ch.dim_out());
  ComplexMatrix out = ComplexMatrix::Zero(n_out, n_out);
  for (const auto& k : ch.kraus()) {
    const ComplexMatrix lk = kron(id_c, k);
    out += lk * rho.matrix() * lk.adjoint();
  }
  return BipartiteState::validate(out, {shape.dimA, ch.dim_out()}, tol);
}

LinearMap dual(const LinearMap& map) {
  const ComplexMatrix p_in = transpose_permutation(idx(map.dim_in()));
  const ComplexMatrix p_out = transpose_permutation(idx(map.dim_out()));
  return LinearMap(map.dim_out(), map.dim_in(), p_in * map.transfer().transpose() * p_out);
}

Unitalization unitalize(const Channel& ch, const Tolerances& tol) {
  const Eigen::Index da = idx(ch.dim_in());
  ComplexMatrix v = hermitian_part(ch.apply(ComplexMatrix::Identity(da, da)));
  const ComplexMatrix vis = psd_inv_sqrt(v, tol);
  LinearMap tilde(ch.dim_in(), ch.dim_out(), kron(vis, vis.conjugate()) * ch.transfer());
  const bool cp = tilde.is_completely_positive(tol);
  return {std::move(v), std::move(tilde), cp};
}

Channel reverse_channel(const Channel& ch, const Tolerances& tol) {
  const Eigen::Index da = idx(ch.dim_in());
  const ComplexMatrix v = hermitian_part(ch.apply(ComplexMatrix::Identity(da, da)));
  const ComplexMatrix vis = psd_inv_sqrt(v, tol);
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : ch.kraus()) kraus.push_back(k.adjoint() * vis);
  return Channel::from_kraus(std::move(kraus), tol);
}

BipartiteState compound_state(const ConditionalState& pi, const DensityOperator& rho_a,
                              const Tolerances& tol) {
  if (pi.given() != Side::A) throw Error(ErrorCode::InvalidArgument, "compound_state expects π_{B|A}");
  const auto shape = pi.shape();
  if (rho_a.dim() != shape.dimA) throw Error(ErrorCode::ShapeMismatch, "ρ_A dimension does not match π");
  const ComplexMatrix s = kron(psd_sqrt(rho_a.matrix(), tol),
                               ComplexMatrix::Identity(idx(shape.dimB), idx(shape.dimB)));
  return BipartiteState::validate(s * pi.matrix() * s, shape, tol);
}

}  // namespace qcond
