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

#include "qcond/bayes.hpp"

#include <string>

#include "qcond/error.hpp"

namespace qcond {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix inv_sqrt_named(const ComplexMatrix& m, const char* name, const Tolerances& tol) {
  try {
    return psd_inv_sqrt(m, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFaithful) throw;
    throw Error(ErrorCode::NotFaithful, std::string(name) + " is not faithful (min eigenvalue " +
                                            std::to_string(e.magnitude()) + ")",
                e.magnitude());
  }
}

}  // namespace

JointStateAnalysis conditionals_from_joint(const BipartiteState& rho_ab, const Tolerances& tol) {
  const BipartiteShape shape = rho_ab.shape();
  const Eigen::Index da = idx(shape.dimA), db = idx(shape.dimB);
  DensityOperator rho_a = DensityOperator::validate(rho_ab.marginal(Side::A), tol);
  DensityOperator rho_b = DensityOperator::validate(rho_ab.marginal(Side::B), tol);
  const ComplexMatrix a_is = kron(inv_sqrt_named(rho_a.matrix(), "rho_A", tol), ComplexMatrix::Identity(db, db));
  const ComplexMatrix b_is = kron(ComplexMatrix::Identity(da, da), inv_sqrt_named(rho_b.matrix(), "rho_B", tol));
  ConditionalState b_given_a =
      ConditionalState::validate(hermitian_part(a_is * rho_ab.matrix() * a_is), shape, Side::A, tol);
  ConditionalState a_given_b =
      ConditionalState::validate(hermitian_part(b_is * rho_ab.matrix() * b_is), shape, Side::B, tol);
  const double residual =
      (compound_state(b_given_a, rho_a, tol).matrix() - rho_ab.matrix()).cwiseAbs().maxCoeff();
  return JointStateAnalysis{rho_ab, std::move(rho_a), std::move(rho_b), std::move(b_given_a), std::move(a_given_b),
                            residual};
}

BayesResiduals bayes_identity_check(const JointStateAnalysis& an, const Tolerances& tol) {
  const ComplexMatrix sa = psd_sqrt(an.rho_a.matrix(), tol);
  const ComplexMatrix sb = psd_sqrt(an.rho_b.matrix(), tol);
  const ComplexMatrix sb_inv = psd_inv_sqrt(an.rho_b.matrix(), tol);
  const Eigen::Index da = sa.rows(), db = sb.rows();

  const ComplexMatrix flip = kron(sa, sb_inv);
  const ComplexMatrix& pba = an.pi_b_given_a.matrix();
  const ComplexMatrix& pab = an.pi_a_given_b.matrix();
  BayesResiduals r;
  r.pi_pi = norm2(pab - flip * pba * flip);

  const ComplexMatrix left = kron(sa, ComplexMatrix::Identity(db, db));
  const ComplexMatrix right = kron(ComplexMatrix::Identity(da, da), sb);
  r.symmetric = norm2(left * pba * left - right * pab * right);
  return r;
}

Recovery recovery_channel(const Channel& ch, const DensityOperator& rho_a, const Tolerances& tol) {
  if (rho_a.dim() != ch.dim_in()) throw Error(ErrorCode::ShapeMismatch, "state dimension does not match channel input");
  const ComplexMatrix sa = psd_sqrt(rho_a.matrix(), tol);
  (void)inv_sqrt_named(rho_a.matrix(), "rho_A", tol);
  const ComplexMatrix rho_b = hermitian_part(ch.apply(rho_a.matrix().transpose()));
  const ComplexMatrix sb_inv_t = inv_sqrt_named(rho_b, "rho_B", tol).transpose();

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) kraus.push_back(sa * k.transpose() * sb_inv_t);
  Channel rec = Channel::from_kraus(std::move(kraus), tol);

  const double forward = (ch.apply(rho_a.matrix().transpose()) - rho_b).cwiseAbs().maxCoeff();
  const double backward = (rec.apply(rho_b.transpose()) - rho_a.matrix()).cwiseAbs().maxCoeff();
  return Recovery{std::move(rec), rho_b, forward, backward};
}

}  // namespace qcond
