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

#include "qcond/classify.hpp"
#include "qcond/error.hpp"
#include "qcond/spectral.hpp"
#include "support.hpp"

namespace qcond {
namespace {

using testing::eye;
using testing::mat;
using testing::max_abs;

Eigen::Index ix(std::size_t n) { return static_cast<Eigen::Index>(n); }

Channel chain() {
  RealMatrix t(2, 2);
  t << 0.9, 0.2, 0.1, 0.8;
  return classical_channel(t);
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(LambdaTau, IdentityIsTransposition) {
  for (std::size_t d : {2u, 3u}) {
    const LinearMap m = lambda_tau(identity_channel(d));
    EXPECT_EQ(max_abs(m.transfer() - LinearMap::transposition(d).transfer()), 0.0);
    // d(d+1)/2 eigenvalues +1 (symmetric), d(d−1)/2 eigenvalues −1 (antisymmetric)
    const ComplexVector v = eigenvalues(m.transfer());
    std::size_t plus = 0, minus = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i) - 1.0) < 1e-12) ++plus;
      if (std::abs(v(i) + 1.0) < 1e-12) ++minus;
    }
    EXPECT_EQ(plus, d * (d + 1) / 2);
    EXPECT_EQ(minus, d * (d - 1) / 2);
  }
}

TEST(LambdaTau, DepolarizingAndRealKraus) {
  Rng rng(1);
  const LinearMap m = lambda_tau(depolarizing_channel(3, 1.0));
  const ComplexMatrix rho = random_density(3, rng).matrix();
  EXPECT_LE(max_abs(m.apply(rho) - eye(3) / 3.0), 1e-15);

  std::vector<ComplexMatrix> kraus{mat({{0.6, 0.0}, {0.0, 0.8}}), mat({{0.0, 0.6}, {0.8, 0.0}})};
  const Channel ch = Channel::from_kraus(kraus);
  const ComplexMatrix sym = mat({{0.3, 0.2}, {0.2, 0.7}});
  EXPECT_LE(max_abs(lambda_tau(ch).apply(sym) - ch.apply(sym)), 1e-15);
}

TEST(LambdaTau, PositiveTracePreservingNotCp) {
  const LinearMap m = lambda_tau(identity_channel(2));
  EXPECT_NO_THROW(require_positive_trace_preserving(m));
  EXPECT_FALSE(m.is_completely_positive());
  const LinearMap not_tp(2, 2, 0.5 * eye(4));
  EXPECT_EQ(code_of([&] { require_positive_trace_preserving(not_tp); }), ErrorCode::ValidationFailed);
}

TEST(FixedPoint, DepolarizingAndChain) {
  const FixedPoint dp = fixed_point(lambda_tau(depolarizing_channel(3, 0.4)));
  EXPECT_LE(max_abs(dp.rho.matrix() - eye(3) / 3.0), 1e-12);
  EXPECT_TRUE(dp.unique);

  // T p = p for T = [[0.9, 0.2], [0.1, 0.8]]: 0.1 p₀ = 0.2 p₁, so p = (2/3, 1/3)
  const FixedPoint fp = fixed_point(lambda_tau(chain()));
  EXPECT_LE(max_abs(fp.rho.matrix() - mat({{2.0 / 3.0, 0}, {0, 1.0 / 3.0}})), 1e-12);
  EXPECT_LE(fp.residual, 1e-12);
  EXPECT_TRUE(fp.power_converged);
  EXPECT_LE(fp.route_agreement, 1e-10);
}

TEST(FixedPoint, TranspositionIsDegenerate) {
  for (std::size_t d : {2u, 3u}) {
    const FixedPoint fp = fixed_point(lambda_tau(identity_channel(d)));
    EXPECT_FALSE(fp.unique);
    EXPECT_EQ(fp.fixed_space_dim, d * (d + 1) / 2);
    EXPECT_LE(max_abs(fp.rho.matrix() - eye(ix(d)) / static_cast<double>(d)), 1e-12);
  }
}

TEST(FixedPoint, RandomChannelsAgreeAcrossRoutes) {
  Rng rng(2);
  for (std::size_t d : {2u, 3u, 4u})
    for (int s = 0; s < 30; ++s) {
      const Channel ch = random_channel(d, d, 2, rng);
      const LinearMap m = lambda_tau(ch);
      const FixedPoint fp = fixed_point(m);
      EXPECT_LE(fp.residual, 1e-9);
      ASSERT_TRUE(fp.power_converged);
      EXPECT_LE(fp.route_agreement, 1e-8);
      EXPECT_LE(norm2(m.apply(fp.rho.matrix()) - fp.rho.matrix()), 1e-9);
    }
}

TEST(PowerIteration, ConvergesDespitePeripheralMinusOne) {
  const PowerIteration pi = power_iteration_fixed_point(lambda_tau(identity_channel(2)));
  EXPECT_TRUE(pi.converged);
  EXPECT_LE(max_abs(pi.rho - eye(2) / 2.0), 1e-14);
}

TEST(SpectralReport, Depolarizing) {
  const SpectralReport r = spectral_report(lambda_tau(depolarizing_channel(2, 1.0)));
  EXPECT_TRUE(r.primitive);
  EXPECT_TRUE(r.irreducible);
  EXPECT_NEAR(r.spectral_gap, 1.0, 1e-12);
  EXPECT_EQ(r.peripheral_count, 1u);
}

TEST(SpectralReport, Transposition) {
  const SpectralReport r = spectral_report(lambda_tau(identity_channel(2)));
  EXPECT_FALSE(r.primitive);
  EXPECT_FALSE(r.irreducible);
  EXPECT_EQ(r.fixed_space_dim, 3u);
  EXPECT_EQ(r.peripheral_count, 4u);
  EXPECT_FALSE(r.sampled_irreducible);
}

TEST(SpectralReport, ClassicalChain) {
  const SpectralReport r = spectral_report(lambda_tau(chain()));
  EXPECT_TRUE(r.primitive);
  // transfer spectrum of Λ^τ: {1, 0.7} from T, and 0 twice from the killed coherences
  EXPECT_NEAR(std::abs(r.eigenvalues(0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.eigenvalues(1) - 0.7), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(r.eigenvalues(2)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.eigenvalues(3)), 0.0, 1e-12);
  EXPECT_NEAR(r.spectral_gap, 0.3, 1e-10);
}

TEST(SpectralReport, PeriodicAndReducibleMaps) {
  // bit flip ρ ↦ XρX: λ=1 simple on the Hermitian part, −1 peripheral, so irreducible but not primitive
  const Channel flip = unitary_channel(mat({{0, 1}, {1, 0}}));
  const SpectralReport p = spectral_report(flip.as_map());
  EXPECT_FALSE(p.primitive);
  EXPECT_FALSE(p.sampled_primitive);

  // amplitude damping to |0⟩: unique fixed point but not faithful
  const double g = 0.4;
  const Channel damp = Channel::from_kraus({mat({{1, 0}, {0, std::sqrt(1 - g)}}), mat({{0, std::sqrt(g)}, {0, 0}})});
  const SpectralReport a = spectral_report(damp.as_map());
  EXPECT_FALSE(a.irreducible);
  EXPECT_FALSE(a.sampled_irreducible);
  EXPECT_EQ(a.fixed_space_dim, 1u);
}

TEST(SpectralReport, RandomChannelsSatisfyPerronFrobenius) {
  Rng rng(3);
  for (std::size_t d : {2u, 3u, 4u})
    for (int s = 0; s < 20; ++s) {
      const SpectralReport r = spectral_report(lambda_tau(random_channel(d, d, 2, rng)), {}, 7);
      EXPECT_NEAR(std::abs(r.eigenvalues(0) - 1.0), 0.0, 1e-9);
      EXPECT_LE(r.eigenvalues.cwiseAbs().maxCoeff(), 1.0 + 1e-9);
      if (r.primitive) {
        EXPECT_TRUE(r.irreducible);
        EXPECT_EQ(r.peripheral_count, 1u);
      }
    }
}

TEST(DampingBasis, Depolarizing) {
  const DampingBasis b = damping_basis(lambda_tau(depolarizing_channel(2, 1.0)));
  EXPECT_LE(max_abs(b.x[0] - eye(2) / 2.0), 1e-12);
  EXPECT_LE(max_abs(b.y[0] - eye(2)), 1e-12);
  for (Eigen::Index a = 1; a < 4; ++a) EXPECT_NEAR(std::abs(b.lambdas(a)), 0.0, 1e-12);
}

TEST(DampingBasis, DephasingExercisesDegenerateBlocks) {
  const DampingBasis b = damping_basis(lambda_tau(dephasing_channel(eye(2))));
  EXPECT_EQ(b.fixed_block, 2u);
  std::vector<double> mags;
  for (Eigen::Index a = 0; a < 4; ++a) mags.push_back(std::abs(b.lambdas(a)));
  std::sort(mags.begin(), mags.end());
  EXPECT_NEAR(mags[0], 0.0, 1e-12);
  EXPECT_NEAR(mags[1], 0.0, 1e-12);
  EXPECT_NEAR(mags[2], 1.0, 1e-12);
  EXPECT_NEAR(mags[3], 1.0, 1e-12);
  EXPECT_LE(b.biorthogonality_residual, 1e-8);
  EXPECT_LE(max_abs(b.y[0] - eye(2)), 1e-8);
  EXPECT_NEAR(std::abs(b.x[1].trace()), 0.0, 1e-8);
}

TEST(DampingBasis, RandomInvariantsAndReconstruction) {
  Rng rng(4);
  for (int s = 0; s < 30; ++s) {
    const std::size_t d = 2 + static_cast<std::size_t>(s % 3);
    const LinearMap m = lambda_tau(random_channel(d, d, 2, rng));
    const DampingBasis b = damping_basis(m);
    const FixedPoint fp = fixed_point(m);
    EXPECT_LE(b.biorthogonality_residual, 1e-8);
    EXPECT_LE(max_abs(b.x[0] - fp.rho.matrix()), 1e-8);
    EXPECT_LE(max_abs(b.y[0] - eye(ix(d))), 1e-8);
    for (std::size_t a = 1; a < b.x.size(); ++a) EXPECT_NEAR(std::abs(b.x[a].trace()), 0.0, 1e-8);
    // Tr(X_α Y_β†) = δ_αβ checked directly on the operators
    for (std::size_t a = 0; a < b.x.size(); ++a)
      for (std::size_t c = 0; c < b.x.size(); ++c)
        EXPECT_NEAR(std::abs((b.x[a] * b.y[c].adjoint()).trace() - (a == c ? 1.0 : 0.0)), 0.0, 1e-8);
    for (Eigen::Index i = 0; i < ix(d); ++i)
      for (Eigen::Index j = 0; j < ix(d); ++j) {
        const ComplexMatrix e = matrix_unit(ix(d), i, j);
        ComplexMatrix sum = ComplexMatrix::Zero(ix(d), ix(d));
        for (std::size_t a = 0; a < b.x.size(); ++a) sum += b.lambdas(ix(a)) * b.x[a] * (b.y[a].adjoint() * e).trace();
        EXPECT_LE(max_abs(sum - m.apply(e)), 1e-8);
        // Λ^τ(ρ) = ρ* Tr ρ + ξ(ρ) with Tr ξ = 0
        EXPECT_NEAR(std::abs((sum - b.x[0] * e.trace()).trace()), 0.0, 1e-8);
      }
  }
}

TEST(DampingBasis, DefectiveMapRaises) {
  // classical chain with a Jordan block: T = [[.5,0,0],[.5,.5,0],[0,.5,1]]
  RealMatrix t(3, 3);
  t << 0.5, 0, 0, 0.5, 0.5, 0, 0, 0.5, 1;
  const LinearMap m = lambda_tau(classical_channel(t));
  EXPECT_EQ(code_of([&] { damping_basis(m); }), ErrorCode::NonDiagonalizable);
  // the fixed point is still available
  EXPECT_LE(max_abs(fixed_point(m).rho.matrix() - mat({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}})), 1e-9);
}

TEST(ConditionalExpansion, ReproducesChoi) {
  EXPECT_LE(max_abs(conditional_expansion(depolarizing_channel(2, 1.0),
                                          damping_basis(lambda_tau(depolarizing_channel(2, 1.0))))
                        .matrix() -
                    eye(4) / 2.0),
            1e-12);
  const Channel id = identity_channel(2);
  EXPECT_LE(max_abs(conditional_expansion(id, damping_basis(lambda_tau(id))).matrix() - testing::unnormalized_bell(2)),
            1e-12);
  Rng rng(5);
  for (int s = 0; s < 10; ++s) {
    // unital: mixture of unitaries
    const Channel u1 = unitary_channel(random_unitary(3, rng)), u2 = unitary_channel(random_unitary(3, rng));
    std::vector<ComplexMatrix> k{std::sqrt(0.4) * u1.kraus()[0], std::sqrt(0.6) * u2.kraus()[0]};
    const Channel ch = Channel::from_kraus(k);
    const ConditionalState pi = conditional_expansion(ch, damping_basis(lambda_tau(ch)));
    EXPECT_LE(max_abs(pi.matrix() - ch.choi()), 1e-8);
    EXPECT_LE(max_abs(testing::trace_out_first(pi.matrix(), 3, 3) - eye(3)), 1e-8);
  }
}

TEST(Broadcast, DepolarizingHasNoCorrelation) {
  const BroadcastCertificate c = broadcast_state(depolarizing_channel(3, 1.0));
  EXPECT_LE(max_abs(c.rho_ab.matrix() - eye(9) / 9.0), 1e-12);
  EXPECT_LE(max_abs(c.zeta), 1e-12);
}

TEST(Broadcast, IdentityChannel) {
  const BroadcastCertificate c = broadcast_state(identity_channel(2));
  EXPECT_LE(max_abs(c.rho_ab.matrix() - testing::unnormalized_bell(2) / 2.0), 1e-12);
  EXPECT_FALSE(c.fixed_point_unique);
  EXPECT_LE(c.marginal_residual_a, 1e-12);
  EXPECT_LE(c.marginal_residual_b, 1e-12);
}

TEST(Broadcast, RandomChannelMarginals) {
  Rng rng(6);
  for (int s = 0; s < 30; ++s) {
    const std::size_t d = 2 + static_cast<std::size_t>(s % 3);
    const BroadcastCertificate c = broadcast_state(random_channel(d, d, 2, rng));
    EXPECT_LE(c.marginal_residual_a, 1e-9);
    EXPECT_LE(c.marginal_residual_b, 1e-9);
    EXPECT_LE(c.zeta_residual_a, 1e-9);
    EXPECT_LE(c.zeta_residual_b, 1e-9);
    EXPECT_LE(max_abs(testing::trace_out_first(c.rho_ab.matrix(), ix(d), ix(d)) - c.rho_star.matrix()), 1e-9);
  }
}

TEST(SpectrumBroadcast, IdentityUnitaryReproducesBroadcast) {
  Rng rng(7);
  const Channel ch = random_channel(3, 3, 2, rng);
  const BroadcastCertificate a = broadcast_state(ch), b = spectrum_broadcast(ch, eye(3));
  EXPECT_LE(max_abs(a.rho_ab.matrix() - b.rho_ab.matrix()), 1e-12);
  EXPECT_LE(max_abs(a.zeta - b.zeta), 1e-12);
}

TEST(SpectrumBroadcast, DepolarizingAndRandom) {
  Rng rng(8);
  const BroadcastCertificate d = spectrum_broadcast(depolarizing_channel(2, 1.0), random_unitary(2, rng));
  EXPECT_LE(max_abs(d.rho_star.matrix() - eye(2) / 2.0), 1e-12);
  EXPECT_LE(d.marginal_residual_b, 1e-12);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix u = random_unitary(3, rng);
    const BroadcastCertificate c = spectrum_broadcast(random_channel(3, 3, 2, rng), u);
    EXPECT_LE(c.spectrum_residual, 1e-8);
    EXPECT_LE(c.marginal_residual_a, 1e-9);
    EXPECT_LE(c.marginal_residual_b, 1e-9);
    EXPECT_LE(c.zeta_residual_a, 1e-9);
    EXPECT_LE(c.zeta_residual_b, 1e-9);
    // the second marginal is Uᵀρ*Ū; Uρ*U† differs for complex U
    EXPECT_GT(c.conjugation_mismatch, 1e-6);
  }
  EXPECT_EQ(code_of([] { spectrum_broadcast(identity_channel(2), mat({{1, 1}, {0, 1}})); }), ErrorCode::NotUnitary);
}

TEST(Asymptotic, DepolarizingAndChain) {
  const AsymptoticChannel a = asymptotic_channel(depolarizing_channel(2, 1.0));
  EXPECT_LE(max_abs(a.channel.transfer() - depolarizing_channel(2, 1.0).transfer()), 1e-12);
  const AsymptoticChannel c = asymptotic_channel(chain());
  Rng rng(9);
  const ComplexMatrix rho = random_density(2, rng).matrix();
  EXPECT_LE(max_abs(c.channel.apply(rho) - mat({{2.0 / 3.0, 0}, {0, 1.0 / 3.0}})), 1e-12);
}

TEST(Asymptotic, RequiresPrimitive) {
  EXPECT_EQ(code_of([] { asymptotic_channel(identity_channel(2)); }), ErrorCode::NotPrimitive);
}

TEST(Asymptotic, GatedOnTheChannelItself) {
  // fixed point of Λ and of Λ^τ differ once ρ* is complex
  Rng rng(10);
  for (int s = 0; s < 10; ++s) {
    const Channel ch = random_channel(2, 2, 2, rng);
    const AsymptoticChannel a = asymptotic_channel(ch);
    const ComplexMatrix fixed = a.report.fixed_point.rho.matrix();
    EXPECT_LE(max_abs(ch.apply(fixed) - fixed), 1e-9);
    const ComplexMatrix big = ch.as_map().power(200).apply(random_density(2, rng).matrix());
    EXPECT_LE(max_abs(big - fixed), 1e-8);
  }
}

}  // namespace
}  // namespace qcond
