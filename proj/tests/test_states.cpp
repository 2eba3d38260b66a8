#include <gtest/gtest.h>

#include <cmath>

#include "qqent/measures.hpp"
#include "qqent/model.hpp"
#include "qqent/states.hpp"
#include "test_support.hpp"

namespace qqent {
namespace {

using testing::Gen;

TEST(BasisTokens, MapToFlatIndices) {
  EXPECT_EQ(basis_index("uU"), 0u);
  EXPECT_EQ(basis_index("u0"), 1u);
  EXPECT_EQ(basis_index("uD"), 2u);
  EXPECT_EQ(basis_index("dU"), 3u);
  EXPECT_EQ(basis_index("d0"), 4u);
  EXPECT_EQ(basis_index("dD"), 5u);
  EXPECT_THROW(basis_index("xU"), ValidationError);
  EXPECT_THROW(basis_index("u1"), ValidationError);
  EXPECT_THROW(basis_index("uUU"), ValidationError);
}

TEST(ParseState, LinearCombinations) {
  const auto s = parse_state("uU + d0");
  EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[4].real(), 1.0 / std::sqrt(2.0), 1e-15);

  const auto t = parse_state("0.5*dU - 0.5 * u0");
  EXPECT_NEAR(t[3].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(t[1].real(), -1.0 / std::sqrt(2.0), 1e-15);

  EXPECT_NEAR(parse_state("-dD")[5].real(), -1.0, 0.0);
  EXPECT_THROW(parse_state(""), ValidationError);
  EXPECT_THROW(parse_state("uU d0"), ValidationError);
  EXPECT_THROW(parse_state("uU - uU"), ValidationError);  // zero vector
  EXPECT_THROW(parse_state("2 uU"), ValidationError);
}

TEST(PureState, RejectsUnnormalized) {
  Amplitudes a{};
  a[0] = 1.0;
  a[1] = 1e-5;
  EXPECT_THROW(PureState{a}, ValidationError);
  EXPECT_NO_THROW(PureState::normalized(a));
}

TEST(DensityOfPure, OuterProduct) {
  const auto rho = density_of_pure(basis_state("uU")).matrix();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(rho(i, j), (i == 0 && j == 0) ? cplx(1.0) : cplx(0.0));

  const auto ghz = density_of_pure(parse_state("uU + dD")).matrix();
  for (std::size_t i : {0u, 5u})
    for (std::size_t j : {0u, 5u}) EXPECT_NEAR(ghz(i, j).real(), 0.5, 1e-15);
  EXPECT_NEAR(ghz(1, 1).real(), 0.0, 0.0);
}

TEST(DensityOfPure, RandomStatesArePure) {
  Gen g(101);
  for (int t = 0; t < 100; ++t) {
    const auto rho = density_of_pure(g.pure_state());
    ASSERT_NEAR(rho.purity(), 1.0, 1e-12);
    ASSERT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(DensityOfMixture, BasicMixtures) {
  const std::array<double, 1> one{1.0};
  const std::array<PureState, 1> up{basis_state("uU")};
  EXPECT_EQ(density_of_mixture(one, up).matrix(), density_of_pure(up[0]).matrix());

  const std::array<double, 2> half{0.5, 0.5};
  const std::array<PureState, 2> pair{basis_state("uU"), basis_state("dD")};
  EXPECT_EQ(density_of_mixture(half, pair).matrix(),
            CMatrix::diagonal(std::array<double, 6>{0.5, 0, 0, 0, 0, 0.5}));
}

TEST(DensityOfMixture, CriticalEquilibriumIsProjectorOverFour) {
  const std::array<double, 4> w{0.25, 0.25, 0.25, 0.25};
  const auto basis = critical_ground_basis();
  const auto rho = density_of_mixture(w, basis);
  EXPECT_LT(testing::max_abs_diff(rho.matrix(), testing::projector(basis) * 0.25), 1e-15);
  // ground projector at Delta = -1 commutes with H
  const CMatrix h = hamiltonian({1.0, -1.0, 0.0});
  EXPECT_LT((h * rho.matrix() - rho.matrix() * h).max_abs(), 1e-14);
}

TEST(DensityOfMixture, Errors) {
  const std::array<PureState, 2> pair{basis_state("uU"), basis_state("dD")};
  const std::array<double, 2> bad{0.5, 0.6};
  EXPECT_THROW(density_of_mixture(bad, pair), ValidationError);
  const std::array<double, 2> neg{1.5, -0.5};
  EXPECT_THROW(density_of_mixture(neg, pair), ValidationError);
  const std::array<double, 1> short_w{1.0};
  EXPECT_THROW(density_of_mixture(short_w, pair), ValidationError);
}

TEST(DensityOfMixture, LinearAndPositive) {
  Gen g(102);
  for (int t = 0; t < 50; ++t) {
    const std::array<PureState, 3> st{g.pure_state(), g.pure_state(), g.pure_state()};
    const double p = g.uniform(), q = g.uniform() * (1.0 - p);
    const std::array<double, 3> w{p, q, 1.0 - p - q};
    const auto rho = density_of_mixture(w, st).matrix();
    CMatrix manual(6, 6);
    for (int k = 0; k < 3; ++k) manual += density_of_pure(st[k]).matrix() * w[k];
    ASSERT_LT(testing::max_abs_diff(rho, manual), 1e-15);
    ASSERT_GE(eigvals_hermitian(rho).front(), -1e-10);
  }
}

TEST(DensityMatrix, FromMatrixValidates) {
  EXPECT_THROW(DensityMatrix::from_matrix(CMatrix::identity(6)), ValidationError);
  EXPECT_THROW(DensityMatrix::from_matrix(CMatrix::diagonal(std::array<double, 6>{1.5, -0.5, 0, 0, 0, 0})),
               ValidationError);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(CMatrix::identity(6) * (1.0 / 6.0)));
}

TEST(Schmidt, ProductAndMaximal) {
  const auto p = schmidt(basis_state("uU"));
  EXPECT_NEAR(p.kappa[0], 1.0, 1e-15);
  EXPECT_NEAR(p.kappa[1], 0.0, 1e-7);
  EXPECT_NEAR(fidelity_amplitude(p.reconstruct(), basis_state("uU")), 1.0, 1e-12);

  const auto m = schmidt(parse_state("uU + d0"));
  EXPECT_NEAR(m.kappa[0], 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(m.kappa[1], 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(Schmidt, Psi1AtIsotropicPoint) {
  const auto [psi1, psi2] = analytic_ground_pair(1.0);
  const auto s = schmidt(psi1);
  EXPECT_NEAR(s.kappa[0] * s.kappa[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.kappa[1] * s.kappa[1], 1.0 / 3.0, 1e-12);
}

TEST(Schmidt, RandomStatesAgreeWithOracleAndReconstruct) {
  Gen g(103);
  for (int t = 0; t < 1000; ++t) {
    const auto psi = g.pure_state();
    const auto s = schmidt(psi);
    const auto oracle = testing::schmidt_oracle(psi);
    ASSERT_NEAR(s.kappa[0], oracle[0], 1e-10);
    ASSERT_NEAR(s.kappa[1], oracle[1], 1e-10);
    ASSERT_NEAR(s.kappa[0] * s.kappa[0] + s.kappa[1] * s.kappa[1], 1.0, 1e-12);

    const auto rec = s.reconstruct();
    ASSERT_NEAR(fidelity_amplitude(rec, psi), 1.0, 1e-10);
    // exact, not just up to phase
    for (std::size_t i = 0; i < 6; ++i) ASSERT_LT(std::abs(rec[i] - psi[i]), 1e-10);

    // secular equation lambda^2 - lambda + |C|^2/4 = 0
    const double c = concurrence_norm(psi);
    for (double k : s.kappa) ASSERT_NEAR(k * k * k * k - k * k + c * c / 4.0, 0.0, 1e-10);

    // qutrit marginal has rank <= 2 and shares the nonzero spectrum
    const auto evb = eigvals_hermitian(partial_trace(density_of_pure(psi).matrix(), TraceOut::A));
    ASSERT_NEAR(evb[0], 0.0, 1e-10);
    ASSERT_NEAR(evb[1], s.kappa[1] * s.kappa[1], 1e-10);
    ASSERT_NEAR(evb[2], s.kappa[0] * s.kappa[0], 1e-10);
  }
}

}  // namespace
}  // namespace qqent
