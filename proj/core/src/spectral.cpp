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

#include "qcond/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qcond/error.hpp"

namespace qcond {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

constexpr int kSampledStates = 50;
// Strict positivity for the sampled defining tests: min eigenvalue > this × trace.
constexpr double kStrictPositivity = 1e-12;
// Eigenvalue clustering and null-space threshold for peripheral eigenspaces.
constexpr double kCluster = 1e-6;

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::size_t square_dim(const LinearMap& map) {
  if (map.dim_in() != map.dim_out()) {
    throw Error(ErrorCode::ShapeMismatch, "fixed points need a map from a space to itself");
  }
  return map.dim_in();
}

/// Eigenvalues with the one closest to 1 moved to the front.
ComplexVector ordered_eigenvalues(const ComplexMatrix& t) {
  ComplexVector v = eigenvalues(t);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i) - 1.0) < std::abs(v(best) - 1.0)) best = i;
  const Complex lead = v(best);
  for (Eigen::Index i = best; i > 0; --i) v(i) = v(i - 1);
  v(0) = lead;
  return v;
}

std::size_t count_fixed(const ComplexVector& vals, const Tolerances& tol) {
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals(i) - 1.0) <= tol.peripheral) ++n;
  return n;
}

ComplexMatrix trace_normalized(const ComplexMatrix& m) { return hermitian_part(m / m.trace()); }

bool strictly_positive(const ComplexMatrix& x) {
  const ComplexMatrix h = hermitian_part(x);
  const double tr = h.trace().real();
  if (!(tr > 0.0)) return false;
  const Eigen::Index d = h.rows();
  Eigen::LLT<ComplexMatrix> llt(h - kStrictPositivity * tr * ComplexMatrix::Identity(d, d));
  return llt.info() == Eigen::Success;
}

void add_eigenvector_probes(const ComplexMatrix& h, std::vector<ComplexMatrix>& probes) {
  if (max_abs(h) <= 1e-12) return;
  const HermitianEigenSystem es = eig_hermitian(h);
  for (Eigen::Index c = 0; c < es.vectors.cols(); ++c) probes.push_back(es.vectors.col(c) * es.vectors.col(c).adjoint());
}

// Random pure states, eigenvectors of ρ*, and eigenvectors of the Hermitian and
// anti-Hermitian parts of every peripheral eigenoperator (with the ρ* component
// removed in the fixed space). The latter land inside invariant faces and
// cyclic components, which random states never do.
std::vector<ComplexMatrix> sampling_probes(const LinearMap& map, const ComplexVector& vals, const ComplexMatrix& rho_star,
                                           const Tolerances& tol, std::uint64_t seed) {
  const std::size_t d = map.dim_in();
  const Eigen::Index n = idx(d * d);
  std::vector<ComplexMatrix> probes;
  Rng rng(seed);
  for (int s = 0; s < kSampledStates; ++s) {
    const ComplexVector psi = random_pure_state(d, rng);
    probes.push_back(psi * psi.adjoint());
  }
  add_eigenvector_probes(rho_star, probes);

  const ComplexMatrix& t = map.transfer();
  const double scale = tolerance_scale(t);
  std::vector<bool> used(static_cast<std::size_t>(vals.size()), false);
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (used[static_cast<std::size_t>(i)] || std::abs(vals(i)) < 1.0 - tol.peripheral) continue;
    Eigen::Index k = 0;
    for (Eigen::Index j = i; j < vals.size(); ++j)
      if (!used[static_cast<std::size_t>(j)] && std::abs(vals(j) - vals(i)) <= kCluster * scale) {
        used[static_cast<std::size_t>(j)] = true;
        ++k;
      }
    const ComplexMatrix ns = null_space(t - vals(i) * ComplexMatrix::Identity(n, n), k, kCluster * scale);
    const bool fixed = std::abs(vals(i) - 1.0) <= tol.peripheral;
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
      ComplexMatrix x = unvec(ns.col(c), idx(d), idx(d));
      if (fixed) x -= x.trace() * rho_star;
      add_eigenvector_probes(hermitian_part(x), probes);
      add_eigenvector_probes(hermitian_part(Complex(0.0, -1.0) * x), probes);
    }
  }
  return probes;
}

}  // namespace

LinearMap lambda_tau(const Channel& ch) {
  return LinearMap(ch.dim_in(), ch.dim_out(), ch.transfer() * transpose_permutation(idx(ch.dim_in())));
}

LinearMap lambda_tau_u(const Channel& ch, const ComplexMatrix& u, const Tolerances& tol) {
  if (u.rows() != idx(ch.dim_out()) || u.cols() != u.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "unitary must match the channel output dimension");
  }
  const double defect = orthonormality_defect(u);
  if (defect > tol.orthonormal) throw Error(ErrorCode::NotUnitary, "matrix is not unitary", defect);
  return LinearMap(ch.dim_in(), ch.dim_out(),
                   kron(u.conjugate(), u) * ch.transfer() * transpose_permutation(idx(ch.dim_in())));
}

void require_positive_trace_preserving(const LinearMap& map, const Tolerances& tol, std::uint64_t seed) {
  const std::size_t d = square_dim(map);
  if (!map.is_trace_preserving(tol)) throw Error(ErrorCode::ValidationFailed, "map is not trace preserving");
  Rng rng(seed);
  for (int s = 0; s < kSampledStates; ++s) {
    const ComplexVector psi = random_pure_state(d, rng);
    const ComplexMatrix out = map.apply(psi * psi.adjoint());
    const double herm = max_abs(out - out.adjoint());
    if (herm > tol.hermitian * tolerance_scale(out)) {
      throw Error(ErrorCode::ValidationFailed, "map does not preserve Hermiticity on a sampled state", herm);
    }
    const double low = min_eigenvalue(hermitian_part(out));
    if (low < -tol.positivity * tolerance_scale(out)) {
      throw Error(ErrorCode::ValidationFailed, "map is not positive on a sampled state", low);
    }
  }
}

PowerIteration power_iteration_fixed_point(const LinearMap& map, const Tolerances& tol, std::size_t max_iterations) {
  const std::size_t d = square_dim(map);
  const ComplexMatrix& t = map.transfer();
  PowerIteration out;
  const ComplexVector vals = eigenvalues(t);
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals(i) - 1.0) > tol.peripheral) out.contraction = std::max(out.contraction, std::abs((1.0 + vals(i)) / 2.0));
  // stop once the remaining distance to the limit, step·c/(1−c), is at rounding level
  const double threshold = std::max(1e-14 * (1.0 - out.contraction), 1e-16);

  ComplexVector x = vec(ComplexMatrix::Identity(idx(d), idx(d)) / static_cast<double>(d));
  while (out.iterations < max_iterations) {
    ComplexVector y = 0.5 * (x + t * x);
    out.last_step = (y - x).cwiseAbs().maxCoeff();
    x = std::move(y);
    ++out.iterations;
    if (out.last_step <= threshold) {
      out.converged = true;
      break;
    }
  }
  out.rho = unvec(x, idx(d), idx(d));
  return out;
}

FixedPoint fixed_point(const LinearMap& map, const Tolerances& tol, std::uint64_t seed) {
  const std::size_t d = square_dim(map);
  require_positive_trace_preserving(map, tol, seed);
  const ComplexMatrix& t = map.transfer();
  const Eigen::Index n = idx(d * d);
  const std::size_t fdim = count_fixed(eigenvalues(t), tol);
  if (fdim == 0) throw Error(ErrorCode::ValidationFailed, "no eigenvalue 1 found for a trace-preserving map");

  const PowerIteration pi = power_iteration_fixed_point(map, tol);
  ComplexMatrix rho;
  double agreement = std::numeric_limits<double>::quiet_NaN();
  if (fdim == 1) {
    const ComplexMatrix ns = null_space(t - ComplexMatrix::Identity(n, n), 1, kCluster * tolerance_scale(t));
    if (ns.cols() == 1) {
      rho = trace_normalized(unvec(ns.col(0), idx(d), idx(d)));
      if (pi.converged) {
        agreement = max_abs(rho - pi.rho);
        // the route-agreement bound shares the peripheral threshold (1e-8)
        if (agreement > tol.peripheral) {
          throw Error(ErrorCode::ConflictingWitness,
                      "eigensolver and power-iteration fixed points differ by " + std::to_string(agreement), agreement);
        }
      }
    }
  }
  if (rho.size() == 0) {
    if (!pi.converged) {
      throw Error(ErrorCode::ValidationFailed, "power iteration did not converge", pi.last_step);
    }
    rho = trace_normalized(pi.rho);
  }
  const double residual = norm2(map.apply(rho) - rho);
  if (residual > tol.trace_preserving) {
    throw Error(ErrorCode::ValidationFailed, "fixed-point residual too large", residual);
  }
  return FixedPoint{DensityOperator::validate(rho, tol), fdim, fdim == 1, residual, pi.iterations, pi.converged,
                    agreement};
}

SpectralReport spectral_report(const LinearMap& map, const Tolerances& tol, std::uint64_t seed) {
  const std::size_t d = square_dim(map);
  FixedPoint fp = fixed_point(map, tol, seed);
  const ComplexVector vals = ordered_eigenvalues(map.transfer());

  std::size_t peripheral = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (std::abs(vals(i)) >= 1.0 - tol.peripheral) ++peripheral;
  const double second = vals.size() > 1 ? std::abs(vals(1)) : 0.0;
  const bool irreducible = fp.fixed_space_dim == 1 && min_eigenvalue(fp.rho.matrix()) >= tol.faithful;
  const bool primitive = irreducible && peripheral == 1;

  const std::vector<ComplexMatrix> probes = sampling_probes(map, vals, fp.rho.matrix(), tol, seed);
  bool sampled_irreducible = true;
  bool sampled_primitive = true;
  std::size_t index = 0;
  const std::size_t cutoff = 2 * d * d * d * d;
  for (const auto& probe : probes) {
    ComplexMatrix y = probe;
    for (std::size_t s = 1; s < d; ++s) y += map.apply(y);
    if (!strictly_positive(y)) sampled_irreducible = false;

    if (!sampled_primitive) continue;
    ComplexMatrix z = probe;
    std::size_t k = 0;
    for (std::size_t s = 1; s <= cutoff; ++s) {
      z = map.apply(z);
      if (strictly_positive(z)) {
        k = s;
        break;
      }
    }
    if (k == 0) {
      sampled_primitive = false;
    } else {
      index = std::max(index, k);
    }
  }
  if (!sampled_primitive) index = 0;

  if (irreducible != sampled_irreducible || primitive != sampled_primitive) {
    throw Error(ErrorCode::ConflictingWitness,
                std::string("spectral flags (irreducible=") + (irreducible ? "true" : "false") +
                    ", primitive=" + (primitive ? "true" : "false") + ") disagree with sampled tests (irreducible=" +
                    (sampled_irreducible ? "true" : "false") + ", primitive=" + (sampled_primitive ? "true" : "false") +
                    ")");
  }
  const std::size_t fdim = fp.fixed_space_dim;
  return SpectralReport{vals,        std::move(fp),       peripheral,        fdim,
                        irreducible, primitive,           second,            1.0 - second,
                        sampled_irreducible, sampled_primitive, index};
}

DampingBasis damping_basis(const LinearMap& map, const Tolerances& tol, std::uint64_t seed) {
  const std::size_t d = square_dim(map);
  const ComplexMatrix& t = map.transfer();
  const EigenSystem es = eig_general(t, tol);
  const FixedPoint fp = fixed_point(map, tol, seed);

  std::vector<Eigen::Index> block, rest;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    (std::abs(es.values(i) - 1.0) <= tol.peripheral ? block : rest).push_back(i);
  if (block.empty()) throw Error(ErrorCode::ValidationFailed, "no eigenvalue 1 found for a trace-preserving map");
  const Eigen::Index m = idx(block.size());
  const Eigen::Index n = t.rows();

  ComplexMatrix r1(n, m), l1(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    r1.col(j) = es.right.col(block[static_cast<std::size_t>(j)]);
    l1.col(j) = es.left.col(block[static_cast<std::size_t>(j)]);
  }
  // X₀ = ρ* and traceless differences of the remaining block vectors
  const ComplexVector id = vec(ComplexMatrix::Identity(idx(d), idx(d)));
  const ComplexVector traces = r1.transpose() * id;
  Eigen::Index pivot = 0;
  traces.cwiseAbs().maxCoeff(&pivot);
  ComplexMatrix r_new(n, m);
  r_new.col(0) = vec(fp.rho.matrix());
  for (Eigen::Index j = 0, c = 1; j < m; ++j) {
    if (j == pivot) continue;
    r_new.col(c++) = r1.col(j) - (traces(j) / traces(pivot)) * r1.col(pivot);
  }
  const ComplexMatrix coords = l1.adjoint() * r_new;
  const double cond = condition_number(coords);
  if (!(cond <= tol.max_condition)) {
    throw Error(ErrorCode::NonDiagonalizable, "fixed-space basis is ill-conditioned", cond);
  }
  const double span = max_abs(r1 * coords - r_new);
  if (span > tol.peripheral) {
    throw Error(ErrorCode::ValidationFailed, "fixed point is not in the λ = 1 eigenspace", span);
  }
  const ComplexMatrix l_new = l1 * coords.inverse().adjoint();

  ComplexMatrix right(n, n), left(n, n);
  DampingBasis b;
  b.lambdas.resize(n);
  b.fixed_block = block.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    right.col(j) = r_new.col(j);
    left.col(j) = l_new.col(j);
    b.lambdas(j) = es.values(block[static_cast<std::size_t>(j)]);
  }
  for (std::size_t j = 0; j < rest.size(); ++j) {
    right.col(m + idx(j)) = es.right.col(rest[j]);
    left.col(m + idx(j)) = es.left.col(rest[j]);
    b.lambdas(m + idx(j)) = es.values(rest[j]);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    b.x.push_back(unvec(right.col(j), idx(d), idx(d)));
    b.y.push_back(unvec(left.col(j), idx(d), idx(d)));
  }
  b.condition = std::max(es.condition, cond);
  b.biorthogonality_residual = max_abs(left.adjoint() * right - ComplexMatrix::Identity(n, n));
  b.reconstruction_residual = max_abs(right * b.lambdas.asDiagonal() * left.adjoint() - t);
  return b;
}

ConditionalState conditional_expansion(const Channel& ch, const DampingBasis& basis, const Tolerances& tol) {
  const Eigen::Index da = idx(ch.dim_in()), db = idx(ch.dim_out());
  if (da != db || basis.x.empty() || basis.x.front().rows() != db || idx(basis.x.size()) != da * da) {
    throw Error(ErrorCode::ShapeMismatch, "damping basis does not match the channel");
  }
  ComplexMatrix pi = ComplexMatrix::Zero(da * db, da * db);
  for (std::size_t a = 0; a < basis.x.size(); ++a) {
    pi += basis.lambdas(idx(a)) * kron(basis.y[a].adjoint(), basis.x[a]);
  }
  const double mismatch = max_abs(pi - ch.choi());
  if (mismatch > tol.peripheral) {
    throw Error(ErrorCode::ValidationFailed, "damping expansion does not reproduce the channel", mismatch);
  }
  return ConditionalState::validate(hermitian_part(pi), {ch.dim_in(), ch.dim_out()}, Side::A, tol);
}

namespace {

BroadcastCertificate certify(const Channel& ch, const LinearMap& map, const ComplexMatrix& u, bool spectrum_mode,
                             const Tolerances& tol, std::uint64_t seed) {
  const FixedPoint fp = fixed_point(map, tol, seed);
  const ComplexMatrix& rho = fp.rho.matrix();
  const BipartiteShape shape{ch.dim_in(), ch.dim_out()};
  BipartiteState rho_ab = compound_state(conditional_from_channel(ch), fp.rho, tol);
  // the second marginal should be Uᵀρ*Ū; with U = I this is ρ* itself, kept exact
  const ComplexMatrix target_b = spectrum_mode ? ComplexMatrix(u.transpose() * rho * u.conjugate()) : rho;
  ComplexMatrix zeta = rho_ab.matrix() - kron(rho, target_b);
  const ComplexMatrix ma = partial_trace(rho_ab.matrix(), shape, Side::B);
  const ComplexMatrix mb = partial_trace(rho_ab.matrix(), shape, Side::A);
  const RealVector spec_a = eig_hermitian(hermitian_part(ma), tol).values;
  const RealVector spec_b = eig_hermitian(hermitian_part(mb), tol).values;

  BroadcastCertificate c{.rho_star = fp.rho,
                         .rho_ab = std::move(rho_ab),
                         .zeta = std::move(zeta),
                         .fixed_point_unique = fp.unique,
                         .spectrum_mode = spectrum_mode,
                         .unitary = u,
                         .spectrum_a = spec_a,
                         .spectrum_b = spec_b};
  c.marginal_residual_a = max_abs(ma - rho);
  c.marginal_residual_b = max_abs(mb - target_b);
  c.zeta_residual_a = max_abs(partial_trace(c.zeta, shape, Side::A));
  c.zeta_residual_b = max_abs(partial_trace(c.zeta, shape, Side::B));
  c.conjugation_mismatch = max_abs(mb - u * rho * u.adjoint());
  c.spectrum_residual = (spec_a - spec_b).cwiseAbs().maxCoeff();
  return c;
}

}  // namespace

BroadcastCertificate broadcast_state(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  const Eigen::Index d = idx(ch.dim_in());
  return certify(ch, lambda_tau(ch), ComplexMatrix::Identity(d, d), false, tol, seed);
}

BroadcastCertificate spectrum_broadcast(const Channel& ch, const ComplexMatrix& u, const Tolerances& tol,
                                        std::uint64_t seed) {
  return certify(ch, lambda_tau_u(ch, u, tol), u, true, tol, seed);
}

AsymptoticChannel asymptotic_channel(const Channel& ch, const Tolerances& tol, std::uint64_t seed) {
  SpectralReport report = spectral_report(ch.as_map(), tol, seed);
  if (!report.primitive) {
    throw Error(ErrorCode::NotPrimitive, "channel is not primitive; Λ^r has no constant limit", report.second_modulus);
  }
  Channel limit = constant_channel(ch.dim_in(), report.fixed_point.rho);
  return AsymptoticChannel{std::move(limit), std::move(report)};
}

}  // namespace qcond
