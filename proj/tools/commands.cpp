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

#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include "qcond/bayes.hpp"
#include "qcond/classify.hpp"
#include "qcond/error.hpp"
#include "qcond/spectral.hpp"

namespace qcond::cli {
namespace {

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

const char* eb_name(EbStatus s) {
  switch (s) {
    case EbStatus::EB:
      return "EB";
    case EbStatus::NotEB:
      return "NotEB";
    case EbStatus::UndecidedPPT:
      return "UndecidedPPT";
  }
  return "unknown";
}

const ComplexMatrix& named(const std::map<std::string, ComplexMatrix>& table, const std::string& name,
                           const char* kind) {
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::InvalidArgument, std::string("no ") + kind + " named '" + name + "'");
  return it->second;
}

Json encode_list(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(encode(m));
  return out;
}

Json dims_of(const ChannelSpec& spec) { return Json{{"in", spec.dim_in}, {"out", spec.dim_out}}; }

// π_{k|j} = ⟨k|Λ(|j⟩⟨j|)|k⟩ in the computational bases
RealMatrix computational_cond_prob(const Channel& ch) {
  RealMatrix p(ix(ch.dim_out()), ix(ch.dim_in()));
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const ComplexMatrix out = ch.apply(matrix_unit(p.cols(), j, j));
    for (Eigen::Index k = 0; k < p.rows(); ++k) p(k, j) = out(k, k).real();
  }
  return p;
}

Json encode_witness(const BasisWitness& w) {
  Json out{{"holds", w.holds}, {"max_commutator", w.max_commutator}};
  out["basis"] = w.holds ? encode(w.basis) : Json(nullptr);
  return out;
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotFaithful:
      return kNotFaithful;
    case ErrorCode::NonDiagonalizable:
      return kNonDiagonalizable;
    case ErrorCode::NotCC:
      return kNotCc;
    case ErrorCode::ConflictingWitness:
    case ErrorCode::ValidationFailed:
    case ErrorCode::NotPrimitive:
      return kInternal;
    default:
      return kInvariant;
  }
}

Outcome run_classify(const Context& ctx) {
  const ChannelSpec& spec = ctx.parsed.spec;
  const Channel ch = build_channel(ctx.parsed, ctx.tol);
  const Classification c = classify(ch, ctx.tol, ctx.seed);

  Outcome o;
  o.flags = Json{{"isQC", c.qc.holds},
                 {"isCQ", c.cq.holds},
                 {"isCC", c.cc.holds},
                 {"ebStatus", eb_name(c.ppt.status)},
                 // a Holevo form is itself a certificate of entanglement breaking
                 {"ebWitnessed", c.qc.holds || c.cq.holds},
                 {"ppt", c.ppt.ppt},
                 {"unital", c.unital}};

  o.result["dims"] = dims_of(spec);
  o.result["representation"] = to_string(spec.representation);
  o.result["choi"] = encode(ch.choi());
  o.result["ppt_min_eigenvalue"] = c.ppt.min_eigenvalue;
  o.result["qc"] = encode_witness(c.qc);
  o.result["cq"] = encode_witness(c.cq);
  if (c.cc.holds) {
    o.result["cc"] = Json{{"e_basis", encode(c.cc.e_basis)},
                          {"f_basis", encode(c.cc.f_basis)},
                          {"cond_prob", encode(c.cc.cond_prob)}};
    o.residuals["cc_reconstruction"] = c.cc.reconstruction_residual;
  } else {
    o.result["cc"] = nullptr;
  }
  o.residuals["qc_witness"] = c.qc.witness_residual;
  o.residuals["cq_witness"] = c.cq.witness_residual;

  if (c.qc.holds) {
    const HolevoForm h = holevo_form(ch, ctx.tol, ctx.seed);
    o.result["holevo"] = Json{{"effects", encode_list(h.effects)},
                              {"cond_prob", encode(h.cond_prob)},
                              {"basis", encode(h.basis)},
                              {"states", encode_list(h.states())}};
    o.residuals["holevo_reconstruction"] = h.reconstruction_residual;
  } else {
    o.result["holevo"] = nullptr;
  }

  if (spec.stochastic) {
    const RealMatrix pi = computational_cond_prob(ch);
    o.result["cond_prob_computational"] = encode(pi);
    o.residuals["stochastic_match"] = (pi - *spec.stochastic).cwiseAbs().maxCoeff();
  }
  return o;
}

Outcome run_bayes(const Context& ctx, const StateOptions& opt) {
  const ChannelSpec& spec = ctx.parsed.spec;
  const Channel ch = build_channel(ctx.parsed, ctx.tol);
  const DensityOperator rho_a = DensityOperator::validate(named(spec.states, opt.state, "state"), ctx.tol);
  if (rho_a.dim() != spec.dim_in) throw Error(ErrorCode::ShapeMismatch, "state dimension does not match dims.in");

  const Recovery rec = recovery_channel(ch, rho_a, ctx.tol);
  const BipartiteState joint = compound_state(conditional_from_channel(ch), rho_a, ctx.tol);
  const JointStateAnalysis analysis = conditionals_from_joint(joint, ctx.tol);
  const BayesResiduals bayes = bayes_identity_check(analysis, ctx.tol);
  const Classification rc = classify(rec.channel, ctx.tol, ctx.seed);

  Outcome o;
  o.result["rho_a"] = encode(rho_a.matrix());
  o.result["rho_b"] = encode(rec.rho_b);
  o.result["recovery_choi"] = encode(rec.channel.choi());
  o.result["joint_state"] = encode(joint.matrix());
  o.result["pi_a_given_b"] = encode(analysis.pi_a_given_b.matrix());
  o.residuals["forward"] = rec.forward_residual;
  o.residuals["backward"] = rec.backward_residual;
  o.residuals["bayes_pi_pi"] = bayes.pi_pi;
  o.residuals["bayes_symmetric"] = bayes.symmetric;
  o.residuals["joint_reconstruction"] = analysis.reconstruction_residual;
  o.flags = Json{{"recovery_isQC", rc.qc.holds}, {"recovery_isCQ", rc.cq.holds}, {"recovery_isCC", rc.cc.holds}};

  // classical Bayes arithmetic r_{i|j} p_j = T_{j|i} x_i, meaningful for a diagonal input
  if (spec.stochastic) {
    const ComplexMatrix& r = rho_a.matrix();
    const double off = max_abs(r - ComplexMatrix(r.diagonal().asDiagonal()));
    if (off <= ctx.tol.hermitian) {
      const RealMatrix& t = *spec.stochastic;
      const RealVector x = r.diagonal().real();
      const RealVector p = t * x;
      const RealMatrix back = computational_cond_prob(rec.channel);
      double worst = 0.0;
      for (Eigen::Index i = 0; i < back.rows(); ++i)
        for (Eigen::Index j = 0; j < back.cols(); ++j) worst = std::max(worst, std::abs(back(i, j) * p(j) - t(j, i) * x(i)));
      o.result["recovered_stochastic"] = encode(back);
      o.residuals["classical_bayes"] = worst;
    } else {
      o.warnings.push_back("input state is not diagonal; classical Bayes check skipped");
    }
  }
  return o;
}

Outcome run_broadcast(const Context& ctx, const BroadcastOptions& opt) {
  const ChannelSpec& spec = ctx.parsed.spec;
  const Channel ch = build_channel(ctx.parsed, ctx.tol);
  if (spec.dim_in != spec.dim_out) throw Error(ErrorCode::ShapeMismatch, "broadcast needs dims.in == dims.out");

  const LinearMap lt = lambda_tau(ch);
  const SpectralReport rep = spectral_report(lt, ctx.tol, ctx.seed);
  const BroadcastCertificate cert = opt.unitary ? spectrum_broadcast(ch, named(spec.unitaries, *opt.unitary, "unitary"), ctx.tol, ctx.seed)
                                                : broadcast_state(ch, ctx.tol, ctx.seed);
  Outcome o;
  const FixedPoint& fp = rep.fixed_point;
  o.result["spectral"] = Json{{"eigenvalues", encode_complex(rep.eigenvalues)},
                              {"peripheral_count", rep.peripheral_count},
                              {"fixed_space_dim", rep.fixed_space_dim},
                              {"second_modulus", rep.second_modulus},
                              {"spectral_gap", rep.spectral_gap},
                              {"primitivity_index", rep.primitivity_index}};
  o.result["fixed_point"] = Json{{"rho_star", encode(fp.rho.matrix())},
                                 {"unique", fp.unique},
                                 {"power_iterations", fp.power_iterations},
                                 {"power_converged", fp.power_converged}};
  o.result["broadcast"] = Json{{"rho_ab", encode(cert.rho_ab.matrix())}, {"zeta", encode(cert.zeta)}};
  o.residuals["fixed_point"] = fp.residual;
  o.residuals["route_agreement"] = std::isnan(fp.route_agreement) ? Json(nullptr) : Json(fp.route_agreement);
  o.residuals["marginal_a"] = cert.marginal_residual_a;
  o.residuals["marginal_b"] = cert.marginal_residual_b;
  o.residuals["zeta_a"] = cert.zeta_residual_a;
  o.residuals["zeta_b"] = cert.zeta_residual_b;
  o.flags = Json{{"irreducible", rep.irreducible},
                 {"primitive", rep.primitive},
                 {"sampled_irreducible", rep.sampled_irreducible},
                 {"sampled_primitive", rep.sampled_primitive},
                 {"fixed_point_unique", fp.unique}};

  if (opt.unitary) {
    const ComplexMatrix rho_star_u = partial_trace(cert.rho_ab.matrix(), cert.rho_ab.shape(), Side::A);
    o.result["spectrum_broadcast"] = Json{{"unitary", encode(cert.unitary)},
                                          {"rho_star_u", encode(rho_star_u)},
                                          {"spectrum_a", encode(cert.spectrum_a)},
                                          {"spectrum_b", encode(cert.spectrum_b)}};
    o.residuals["spectrum"] = cert.spectrum_residual;
    o.residuals["conjugation_mismatch"] = cert.conjugation_mismatch;
    o.flags["sorted_spectra_match"] = cert.spectrum_residual <= 1e-8;
  }

  if (!fp.unique) {
    o.warnings.push_back("degenerate fixed space (dimension " + std::to_string(fp.fixed_space_dim) +
                         "); reporting the power-iteration limit from I/d");
  }

  try {
    const DampingBasis db = damping_basis(lt, ctx.tol, ctx.seed);
    o.result["damping_basis"] = Json{{"lambdas", encode_complex(db.lambdas)},
                                     {"x", encode_list(db.x)},
                                     {"y", encode_list(db.y)},
                                     {"fixed_block", db.fixed_block},
                                     {"condition", db.condition}};
    o.residuals["damping_biorthogonality"] = db.biorthogonality_residual;
    o.residuals["damping_reconstruction"] = db.reconstruction_residual;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonDiagonalizable) throw;
    o.result["damping_basis"] = nullptr;
    o.warnings.push_back(std::string("damping basis omitted: ") + e.what());
    o.exit_code = kNonDiagonalizable;
  }
  return o;
}

Outcome run_cc_membership(const Context& ctx, const StateOptions& opt) {
  const ChannelSpec& spec = ctx.parsed.spec;
  const Channel ch = build_channel(ctx.parsed, ctx.tol);
  const ComplexMatrix& m = named(spec.states, opt.state, "state");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n % spec.dim_in != 0) throw Error(ErrorCode::ShapeMismatch, "state dimension is not a multiple of dims.in");
  const BipartiteState rho = BipartiteState::validate(m, {n / spec.dim_in, spec.dim_in}, ctx.tol);
  const CcMembership mem = cc_membership(ch, rho, ctx.tol, ctx.seed);

  Outcome o;
  o.flags = Json{{"member", mem.member},
                 {"block_route", mem.block_route},
                 {"dephasing_route", mem.dephasing_route},
                 {"routes_agree", mem.routes_agree}};
  o.result["shape"] = Json{{"C", n / spec.dim_in}, {"A", spec.dim_in}};
  o.result["e_basis"] = encode(mem.e_basis);
  Json norms = Json::array();
  for (double v : mem.commutator_norms) norms.push_back(v);
  o.result["commutator_norms"] = std::move(norms);
  o.result["max_commutator"] = mem.max_commutator;
  o.result["dephased"] = encode(partial_dephase(mem.e_basis, rho.matrix(), rho.shape()));
  o.residuals["witness"] = mem.witness_residual;
  if (!mem.routes_agree) o.warnings.push_back("block and dephasing routes disagree; reporting the block route");
  return o;
}

Outcome run_decohere(const Context& ctx, const DecohereOptions& opt) {
  const ChannelSpec& spec = ctx.parsed.spec;
  const ComplexMatrix& m = named(spec.states, opt.state, "state");
  const auto n = static_cast<std::size_t>(m.rows());
  ComplexMatrix basis;
  if (opt.basis) {
    basis = named(spec.unitaries, *opt.basis, "unitary");
  } else {
    basis = ComplexMatrix::Identity(ix(n % spec.dim_in == 0 ? spec.dim_in : n), ix(n % spec.dim_in == 0 ? spec.dim_in : n));
  }
  const auto k = static_cast<std::size_t>(basis.rows());
  if (k == 0 || n % k != 0) throw Error(ErrorCode::ShapeMismatch, "basis dimension does not divide the state dimension");
  const DephasingGenerator gen = DephasingGenerator::validate(basis, opt.gamma, ctx.tol);

  ComplexMatrix out, limit;
  if (k == n) {
    const DensityOperator rho = DensityOperator::validate(m, ctx.tol);
    out = decohere(gen, rho, opt.t).matrix();
    limit = dephase(basis, rho.matrix());
  } else {
    const BipartiteState rho = BipartiteState::validate(m, {n / k, k}, ctx.tol);
    out = partial_decohere(gen, rho, opt.t).matrix();
    limit = partial_decohere_limit(gen, rho).matrix();
  }

  Outcome o;
  o.result["shape"] = Json{{"C", n / k}, {"A", k}};
  o.result["gamma"] = opt.gamma;
  o.result["t"] = opt.t;
  o.result["coherence_factor"] = std::exp(-opt.gamma * opt.t);
  o.result["rho_t"] = encode(out);
  if (std::isinf(opt.t)) o.result["dephased"] = encode(limit);
  o.residuals["distance_to_limit"] = max_abs(out - limit);
  o.flags["fully_dephased"] = max_abs(out - limit) <= ctx.tol.hermitian;
  return o;
}

}  // namespace qcond::cli
