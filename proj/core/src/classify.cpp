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

#include "qcond/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qcond/error.hpp"

namespace qcond {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

constexpr int kRetries = 3;
// Family members this far below the largest norm are rounding noise.
constexpr double kNegligible = 1e-12;

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void normalize_columns_phase(ComplexMatrix& basis) {
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      const double a = std::abs(basis(r, c));
      if (a > best_abs * (1.0 + 1e-9)) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs > 0.0) basis.col(c) *= std::conj(basis(best, c)) / best_abs;
  }
}

ComplexMatrix projector(const ComplexMatrix& basis, Eigen::Index i) {
  return basis.col(i) * basis.col(i).adjoint();
}

// Σ_i vec(R_i) vec(F_iᵀ)ᵀ: the transfer matrix of ρ ↦ Σ_i Tr(ρF_i) R_i.
ComplexMatrix measure_prepare_transfer(const std::vector<ComplexMatrix>& effects,
                                       const std::vector<ComplexMatrix>& states) {
  const Eigen::Index din = effects.front().rows();
  const Eigen::Index dout = states.front().rows();
  ComplexMatrix t = ComplexMatrix::Zero(dout * dout, din * din);
  for (std::size_t i = 0; i < effects.size(); ++i) {
    t += vec(states[i]) * vec(effects[i].transpose()).transpose();
  }
  return t;
}

std::vector<ComplexMatrix> hermitian_images(const LinearMap& map) {
  std::vector<ComplexMatrix> out;
  for (const auto& h : hermitian_operator_basis(idx(map.dim_in()))) out.push_back(hermitian_part(map.apply(h)));
  return out;
}

std::vector<ComplexMatrix> hermitian_family_from_blocks(const BlockMatrix& b) {
  std::vector<ComplexMatrix> family;
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    family.push_back(hermitian_part(b[k][k]));
    for (std::size_t l = k + 1; l < n; ++l) {
      family.push_back(b[k][l] + b[k][l].adjoint());
      family.push_back(Complex(0.0, 1.0) * (b[k][l] - b[k][l].adjoint()));
    }
  }
  return family;
}

ComplexMatrix swap_factors(const ComplexMatrix& m, BipartiteShape shape) {
  const Eigen::Index da = idx(shape.dimA), db = idx(shape.dimB);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index c = 0; c < da; ++c)
        for (Eigen::Index d = 0; d < db; ++d) out(b * da + a, d * da + c) = m(a * db + b, c * db + d);
  return out;
}

}  // namespace

std::vector<ComplexMatrix> hermitian_operator_basis(Eigen::Index d) {
  std::vector<ComplexMatrix> out;
  for (Eigen::Index a = 0; a < d; ++a) {
    out.push_back(matrix_unit(d, a, a));
    for (Eigen::Index b = a + 1; b < d; ++b) {
      out.push_back(matrix_unit(d, a, b) + matrix_unit(d, b, a));
      out.push_back(Complex(0.0, 1.0) * (matrix_unit(d, a, b) - matrix_unit(d, b, a)));
    }
  }
  return out;
}

BasisWitness common_eigenbasis(const std::vector<ComplexMatrix>& hermitian_family, Eigen::Index dim,
                               const Tolerances& tol, std::uint64_t seed) {
  BasisWitness w;
  std::vector<const ComplexMatrix*> members;
  std::vector<double> norms;
  double largest = 0.0;
  for (const auto& h : hermitian_family) {
    if (h.rows() != dim || h.cols() != dim) throw Error(ErrorCode::ShapeMismatch, "family member has wrong dimension");
    largest = std::max(largest, norm2(h));
  }
  for (const auto& h : hermitian_family) {
    const double n = norm2(h);
    if (n > kNegligible * largest && n > 0.0) {
      members.push_back(&h);
      norms.push_back(n);
    }
  }
  if (members.empty()) {
    w.holds = true;
    w.basis = ComplexMatrix::Identity(dim, dim);
    return w;
  }

  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const double c = norm2(commutator(*members[i], *members[j])) / (norms[i] * norms[j]);
      w.max_commutator = std::max(w.max_commutator, c);
    }
  if (w.max_commutator > tol.commute) return w;

  Rng rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  double best_residual = INFINITY;
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < members.size(); ++i) h += (coeff(rng) / norms[i]) * *members[i];
    ComplexMatrix u = eig_hermitian(hermitian_part(h), tol).vectors;
    double residual = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      ComplexMatrix d = u.adjoint() * *members[i] * u;
      d.diagonal().setZero();
      residual = std::max(residual, norm2(d) / norms[i]);
    }
    best_residual = std::min(best_residual, residual);
    if (residual <= tol.commute) {
      normalize_columns_phase(u);
      w.holds = true;
      w.basis = std::move(u);
      w.witness_residual = residual;
      return w;
    }
  }
  w.witness_residual = best_residual;
  return w;
}

BasisWitness is_qc(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  return common_eigenbasis(hermitian_images(ch.as_map()), idx(ch.dim_out()), tol, seed);
}

BasisWitness is_cq(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  return common_eigenbasis(hermitian_images(dual(ch.as_map())), idx(ch.dim_in()), tol, seed);
}

CcWitness is_cc(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  CcWitness out;
  const BasisWitness qc = is_qc(ch, tol, seed);
  if (!qc.holds) return out;
  const BasisWitness cq = is_cq(ch, tol, seed);
  if (!cq.holds) return out;

  const Eigen::Index din = idx(ch.dim_in()), dout = idx(ch.dim_out());
  out.e_basis = cq.basis;
  out.f_basis = qc.basis;
  out.cond_prob.resize(dout, din);
  std::vector<ComplexMatrix> effects, states;
  for (Eigen::Index j = 0; j < din; ++j) {
    const ComplexMatrix image = ch.apply(projector(out.e_basis, j));
    ComplexMatrix r = ComplexMatrix::Zero(dout, dout);
    for (Eigen::Index k = 0; k < dout; ++k) {
      const double p = (out.f_basis.col(k).adjoint() * image * out.f_basis.col(k))(0, 0).real();
      out.cond_prob(k, j) = p;
      r += p * projector(out.f_basis, k);
    }
    effects.push_back(projector(out.e_basis, j));
    states.push_back(std::move(r));
  }
  out.reconstruction_residual = max_abs(measure_prepare_transfer(effects, states) - ch.transfer());
  out.holds = out.reconstruction_residual <= tol.trace_preserving;
  return out;
}

PptResult ppt_choi(const Channel& ch, const Tolerances& tol) {
  PptResult r;
  const BipartiteShape shape{ch.dim_in(), ch.dim_out()};
  const ComplexMatrix pt = hermitian_part(partial_transpose(ch.choi(), shape, Side::A));
  r.min_eigenvalue = min_eigenvalue(pt);
  r.ppt = r.min_eigenvalue >= -tol.positivity * tolerance_scale(pt);
  if (!r.ppt) {
    r.status = EbStatus::NotEB;
  } else {
    r.status = shape.size() <= 6 ? EbStatus::EB : EbStatus::UndecidedPPT;
  }
  return r;
}

Classification classify(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  Classification c;
  c.unital = ch.as_map().is_unital(tol);
  c.ppt = ppt_choi(ch, tol);
  c.qc = is_qc(ch, tol, seed);
  c.cq = is_cq(ch, tol, seed);
  if (c.qc.holds && c.cq.holds) c.cc = is_cc(ch, tol, seed);
  return c;
}

std::vector<ComplexMatrix> HolevoForm::states() const {
  std::vector<ComplexMatrix> out;
  for (Eigen::Index i = 0; i < cond_prob.cols(); ++i) {
    ComplexMatrix r = ComplexMatrix::Zero(basis.rows(), basis.rows());
    for (Eigen::Index j = 0; j < cond_prob.rows(); ++j) r += cond_prob(j, i) * projector(basis, j);
    out.push_back(std::move(r));
  }
  return out;
}

HolevoForm holevo_form(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  const BasisWitness qc = is_qc(ch, tol, seed);
  if (!qc.holds) {
    throw Error(ErrorCode::NotQC, "outputs do not share an eigenbasis (max relative commutator " +
                                      std::to_string(qc.max_commutator) + ")",
                qc.max_commutator);
  }
  const LinearMap adj = dual(ch.as_map());
  const Eigen::Index dout = idx(ch.dim_out());
  HolevoForm form;
  form.basis = qc.basis;
  form.cond_prob = RealMatrix::Identity(dout, dout);
  for (Eigen::Index j = 0; j < dout; ++j) form.effects.push_back(hermitian_part(adj.apply(projector(form.basis, j))));
  // validates positivity and completeness of the extracted effects
  (void)Povm::validate(form.effects, tol);
  form.reconstruction_residual = max_abs(measure_prepare_transfer(form.effects, form.states()) - ch.transfer());
  if (form.reconstruction_residual > tol.trace_preserving) {
    throw Error(ErrorCode::ValidationFailed, "Holevo form does not reproduce the channel",
                form.reconstruction_residual);
  }
  return form;
}

void require_stochastic(const RealMatrix& p, const Tolerances& tol) {
  if (p.size() == 0 || !p.allFinite()) throw Error(ErrorCode::NotFinite, "stochastic matrix is empty or not finite");
  const double low = p.minCoeff();
  if (low < -tol.positivity) throw Error(ErrorCode::NotPositive, "stochastic matrix has a negative entry", low);
  const double defect = (p.colwise().sum().array() - 1.0).abs().maxCoeff();
  if (defect > tol.trace_preserving) {
    throw Error(ErrorCode::NotNormalized, "stochastic matrix columns do not sum to 1", defect);
  }
}

Channel qc_channel(const Povm& effects, const RealMatrix& cond_prob, const ComplexMatrix& f_basis,
                   const Tolerances& tol) {
  const Eigen::Index din = idx(effects.dim()), dout = f_basis.rows();
  require_orthonormal_basis(f_basis, dout, tol);
  require_stochastic(cond_prob, tol);
  if (cond_prob.rows() != dout || cond_prob.cols() != idx(effects.size())) {
    throw Error(ErrorCode::ShapeMismatch, "conditional probability must be (basis size) x (effect count)");
  }
  ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
  for (Eigen::Index i = 0; i < cond_prob.cols(); ++i)
    for (Eigen::Index j = 0; j < dout; ++j) {
      if (cond_prob(j, i) != 0.0) {
        choi += cond_prob(j, i) * kron(effects.effects()[static_cast<std::size_t>(i)].transpose(), projector(f_basis, j));
      }
    }
  return Channel::from_choi(choi, effects.dim(), static_cast<std::size_t>(dout), tol);
}

Channel cq_channel(const ComplexMatrix& e_basis, const RealMatrix& cond_prob,
                   const std::vector<DensityOperator>& states, const Tolerances& tol) {
  const Eigen::Index din = e_basis.rows();
  require_orthonormal_basis(e_basis, din, tol);
  require_stochastic(cond_prob, tol);
  if (states.empty() || cond_prob.rows() != idx(states.size()) || cond_prob.cols() != din) {
    throw Error(ErrorCode::ShapeMismatch, "conditional probability must be (state count) x (basis size)");
  }
  const Eigen::Index dout = idx(states.front().dim());
  ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
  for (Eigen::Index i = 0; i < din; ++i) {
    ComplexMatrix s = ComplexMatrix::Zero(dout, dout);
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (idx(states[j].dim()) != dout) throw Error(ErrorCode::ShapeMismatch, "prepared states differ in dimension");
      s += cond_prob(idx(j), i) * states[j].matrix();
    }
    choi += kron(projector(e_basis, i).conjugate(), s);
  }
  return Channel::from_choi(choi, static_cast<std::size_t>(din), static_cast<std::size_t>(dout), tol);
}

Channel cc_channel(const RealMatrix& t, const ComplexMatrix& e_basis, const ComplexMatrix& f_basis,
                   const Tolerances& tol) {
  const Eigen::Index din = e_basis.rows(), dout = f_basis.rows();
  require_orthonormal_basis(e_basis, din, tol);
  require_orthonormal_basis(f_basis, dout, tol);
  require_stochastic(t, tol);
  if (t.rows() != dout || t.cols() != din) {
    throw Error(ErrorCode::ShapeMismatch, "transition matrix must be (output dim) x (input dim)");
  }
  ComplexMatrix choi = ComplexMatrix::Zero(din * dout, din * dout);
  for (Eigen::Index j = 0; j < din; ++j)
    for (Eigen::Index k = 0; k < dout; ++k) {
      if (t(k, j) != 0.0) choi += t(k, j) * kron(projector(e_basis, j).conjugate(), projector(f_basis, k));
    }
  return Channel::from_choi(choi, static_cast<std::size_t>(din), static_cast<std::size_t>(dout), tol);
}

Channel classical_channel(const RealMatrix& t, const Tolerances& tol) {
  return cc_channel(t, ComplexMatrix::Identity(t.cols(), t.cols()), ComplexMatrix::Identity(t.rows(), t.rows()), tol);
}

QcOutputDecomposition decompose_qc_output(const Channel& ch, const HolevoForm& form,
                                          const BipartiteState& rho_ca, const Tolerances& tol) {
  const BipartiteShape shape = rho_ca.shape();
  if (shape.dimB != ch.dim_in()) throw Error(ErrorCode::ShapeMismatch, "second factor must match the channel input");
  const Eigen::Index dc = idx(shape.dimA), da = idx(shape.dimB), dout = idx(ch.dim_out());
  const BlockMatrix b = blocks(rho_ca, ComplexMatrix::Identity(da, da), tol);

  QcOutputDecomposition out;
  out.f_basis = form.basis;
  const std::size_t n = form.effects.size();
  out.weights.resize(idx(n));
  out.min_sigma_eigenvalue = INFINITY;
  for (std::size_t l = 0; l < n; ++l) {
    const ComplexMatrix& f = form.effects[l];
    ComplexMatrix sigma = ComplexMatrix::Zero(dc, dc);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j) sigma += f(j, i) * b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    sigma = hermitian_part(sigma);
    out.min_sigma_eigenvalue = std::min(out.min_sigma_eigenvalue, min_eigenvalue(sigma));
    const double p = sigma.trace().real();
    out.weights(idx(l)) = p;
    out.states.push_back(p > 0.0 ? ComplexMatrix(sigma / p) : ComplexMatrix::Zero(dc, dc));
    out.sigmas.push_back(std::move(sigma));
  }
  out.joint = form.cond_prob * out.weights.asDiagonal();

  ComplexMatrix rebuilt = ComplexMatrix::Zero(dc * dout, dc * dout);
  for (Eigen::Index k = 0; k < dout; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const double p = form.cond_prob(k, idx(l));
      if (p != 0.0) rebuilt += p * kron(out.sigmas[l], projector(form.basis, k));
    }
  out.reconstruction_residual = max_abs(rebuilt - extend_apply(ch, rho_ca, tol).matrix());
  const double max_weight = n == 0 ? 0.0 : out.weights.maxCoeff();
  out.valid = out.reconstruction_residual <= tol.trace_preserving &&
              out.min_sigma_eigenvalue >= -tol.positivity && max_weight <= 1.0 + tol.trace;
  return out;
}

QcOutputDecomposition decompose_qc_output(const Channel& ch, const BipartiteState& rho_ca, const Tolerances& tol,
                                          std::uint64_t seed) {
  return decompose_qc_output(ch, holevo_form(ch, tol, seed), rho_ca, tol);
}

ComplexMatrix dephase(const ComplexMatrix& basis, const ComplexMatrix& rho) {
  if (basis.rows() != rho.rows() || rho.rows() != rho.cols()) throw Error(ErrorCode::ShapeMismatch, "dephase: dimension mismatch");
  const ComplexMatrix rotated = basis.adjoint() * rho * basis;
  return basis * ComplexMatrix(rotated.diagonal().asDiagonal()) * basis.adjoint();
}

ComplexMatrix partial_dephase(const ComplexMatrix& basis, const ComplexMatrix& rho, BipartiteShape shape) {
  const Eigen::Index dc = idx(shape.dimA), da = idx(shape.dimB);
  if (basis.rows() != da || rho.rows() != dc * da || rho.cols() != dc * da) {
    throw Error(ErrorCode::ShapeMismatch, "partial_dephase: dimension mismatch");
  }
  const ComplexMatrix u = kron(ComplexMatrix::Identity(dc, dc), basis);
  ComplexMatrix rotated = u.adjoint() * rho * u;
  for (Eigen::Index r = 0; r < rotated.rows(); ++r)
    for (Eigen::Index c = 0; c < rotated.cols(); ++c)
      if (r % da != c % da) rotated(r, c) = 0.0;
  return u * rotated * u.adjoint();
}

CcStateWitness is_cc_state(const ComplexMatrix& tau, BipartiteShape shape, const Tolerances& tol, std::uint64_t seed) {
  CcStateWitness out;
  const Eigen::Index d1 = idx(shape.dimA), d2 = idx(shape.dimB);
  const BasisWitness first =
      common_eigenbasis(hermitian_family_from_blocks(blocks(tau, shape, ComplexMatrix::Identity(d2, d2), tol)), d1, tol, seed);
  const BipartiteShape swapped{shape.dimB, shape.dimA};
  const BasisWitness second = common_eigenbasis(
      hermitian_family_from_blocks(blocks(swap_factors(tau, shape), swapped, ComplexMatrix::Identity(d1, d1), tol)), d2,
      tol, seed);
  out.witness_residual = std::max(first.witness_residual, second.witness_residual);
  if (!first.holds || !second.holds) {
    out.residual = INFINITY;
    return out;
  }
  out.first_basis = first.basis;
  out.second_basis = second.basis;
  out.residual = norm2(tau - dephase(kron(first.basis, second.basis), tau));
  out.holds = out.residual <= tol.commute * tolerance_scale(tau);
  return out;
}

CcMembership cc_membership(const Channel& ch, const BipartiteState& rho_ca, const Tolerances& tol, std::uint64_t seed) {
  const CcWitness cc = is_cc(ch, tol, seed);
  if (!cc.holds) throw Error(ErrorCode::NotCC, "channel is not classical-classical");
  if (rho_ca.shape().dimB != ch.dim_in()) throw Error(ErrorCode::ShapeMismatch, "second factor must match the channel input");

  CcMembership out;
  out.e_basis = cc.e_basis;
  const BlockMatrix b = blocks(rho_ca, cc.e_basis, tol);
  std::vector<double> norms;
  for (std::size_t i = 0; i < b.size(); ++i) norms.push_back(norm2(b[i][i]));
  const double largest = *std::max_element(norms.begin(), norms.end());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      double c = 0.0;
      if (norms[i] > kNegligible * largest && norms[j] > kNegligible * largest) {
        c = norm2(commutator(b[i][i], b[j][j])) / (norms[i] * norms[j]);
      }
      out.commutator_norms.push_back(c);
      out.max_commutator = std::max(out.max_commutator, c);
    }
  out.block_route = out.max_commutator <= tol.commute;

  const ComplexMatrix limit = partial_dephase(cc.e_basis, rho_ca.matrix(), rho_ca.shape());
  const CcStateWitness state = is_cc_state(limit, rho_ca.shape(), tol, seed);
  out.dephasing_route = state.holds;
  out.witness_residual = state.witness_residual;
  out.routes_agree = out.block_route == out.dephasing_route;
  out.member = out.block_route;
  return out;
}

DephasingGenerator DephasingGenerator::validate(const ComplexMatrix& basis, double gamma, const Tolerances& tol) {
  require_orthonormal_basis(basis, basis.rows(), tol);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "dephasing rate must be positive and finite", gamma);
  }
  return DephasingGenerator(basis, gamma);
}

namespace {

double decay_weight(const DephasingGenerator& gen, double t) {
  if (std::isnan(t) || t < 0.0) throw Error(ErrorCode::InvalidArgument, "decoherence time must be nonnegative", t);
  return std::exp(-gen.gamma() * t);
}

}  // namespace

DensityOperator decohere(const DephasingGenerator& gen, const DensityOperator& rho, double t) {
  if (rho.dim() != gen.dim()) throw Error(ErrorCode::ShapeMismatch, "state dimension does not match the generator");
  const double w = decay_weight(gen, t);
  return DensityOperator::validate(w * rho.matrix() + (1.0 - w) * dephase(gen.basis(), rho.matrix()));
}

BipartiteState partial_decohere(const DephasingGenerator& gen, const BipartiteState& rho_ca, double t) {
  if (rho_ca.shape().dimB != gen.dim()) throw Error(ErrorCode::ShapeMismatch, "second factor does not match the generator");
  const double w = decay_weight(gen, t);
  const ComplexMatrix limit = partial_dephase(gen.basis(), rho_ca.matrix(), rho_ca.shape());
  return BipartiteState::validate(w * rho_ca.matrix() + (1.0 - w) * limit, rho_ca.shape());
}

BipartiteState partial_decohere_limit(const DephasingGenerator& gen, const BipartiteState& rho_ca) {
  return partial_decohere(gen, rho_ca, INFINITY);
}

}  // namespace qcond
