#include <gtest/gtest.h>

#include <cmath>

#include "qqent/measures.hpp"
#include "qqent/model.hpp"
#include "test_support.hpp"

namespace qqent {
namespace {

using testing::Gen;

TEST(ConcurrenceVector, ProductStateIsZero) {
  const auto c = concurrence_vector(basis_state("uU"));
  for (const auto& z : c.components) EXPECT_EQ(z, cplx(0.0));
  EXPECT_EQ(concurrence_norm(basis_state("d0")), 0.0);
}

TEST(ConcurrenceVector, MinorOrdering) {
  const auto c = concurrence_vector(parse_state("uU + d0"));
  EXPECT_NEAR(c.components[0].real(), 1.0, 1e-15);
  EXPECT_EQ(c.components[1], cplx(0.0));
  EXPECT_EQ(c.components[2], cplx(0.0));
  EXPECT_NEAR(c.norm(), 1.0, 1e-15);

  // a11 a23 minor lands in C3, a12 a23 in C2
  EXPECT_NEAR(std::abs(concurrence_vector(parse_state("uU + dD")).components[2]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(concurrence_vector(parse_state("u0 + dD")).components[1]), 1.0, 1e-15);
}

TEST(ConcurrenceVector, ComponentsUseConjugatedAmplitudes) {
  const cplx I(0.0, 1.0);
  Amplitudes a{};
  a[0] = 1.0 / std::sqrt(2.0);
  a[4] = I / std::sqrt(2.0);
  const auto c = concurrence_vector(PureState(a));
  EXPECT_NEAR(c.components[0].real(), 0.0, 1e-15);
  EXPECT_NEAR(c.components[0].imag(), -1.0, 1e-15);
}

TEST(ConcurrenceNorm, FieldGroundStateAtZeroAnisotropy) {
  EXPECT_NEAR(concurrence_norm(parse_state("dU - u0")), 1.0, 1e-15);
}

TEST(ConcurrenceNorm, FerromagneticSuperposition) {
  Gen g(201);
  for (int t = 0; t < 100; ++t) {
    const cplx a = g.cnormal(), b = g.cnormal();
    Amplitudes amp{};
    amp[basis::dD] = a;
    amp[basis::uU] = b;
    const auto psi = PureState::normalized(amp);
    const double expect = 2.0 * std::abs(psi[basis::dD]) * std::abs(psi[basis::uU]);
    ASSERT_NEAR(concurrence_norm(psi), expect, 1e-14);
    ASSERT_NEAR(bilinear_concurrence(psi), expect, 1e-14);
  }
}

TEST(ConcurrenceNorm, OracleIdentities) {
  Gen g(202);
  for (int t = 0; t < 1000; ++t) {
    const auto psi = g.pure_state();
    const double c = concurrence_norm(psi);
    const auto k = testing::schmidt_oracle(psi);
    ASSERT_NEAR(c, 2.0 * k[0] * k[1], 1e-10);
    const CMatrix ra = partial_trace(density_of_pure(psi).matrix(), TraceOut::B);
    const double purity = (ra * ra).trace().real();
    ASSERT_NEAR(c * c, 2.0 * (1.0 - purity), 1e-10);
    ASSERT_LE(c, 1.0 + 1e-12);
  }
}

TEST(BilinearConcurrence, MatchesHermitianForRealAmplitudesOnly) {
  Gen g(203);
  for (int t = 0; t < 200; ++t) {
    Amplitudes a{};
    for (auto& z : a) z = g.normal();
    auto psi = PureState::normalized(a);
    ASSERT_NEAR(bilinear_concurrence(psi), concurrence_norm(psi), 1e-12);
    // global phase does not matter
    for (auto& z : a) z *= std::polar(1.0, 0.7);
    psi = PureState::normalized(a);
    ASSERT_NEAR(bilinear_concurrence(psi), concurrence_norm(psi), 1e-12);
  }
  int smaller = 0;
  for (int t = 0; t < 200; ++t) {
    const auto psi = g.pure_state();
    ASSERT_LE(bilinear_concurrence(psi), concurrence_norm(psi) + 1e-12);
    smaller += bilinear_concurrence(psi) < concurrence_norm(psi) - 1e-6;
  }
  EXPECT_GT(smaller, 150);
}

TEST(BinaryEntropy, Values) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  // 30-digit reference: 0.918295834054489514787...
  EXPECT_NEAR(binary_entropy(1.0 / 3.0), 0.918295834054489514787, 1e-15);
  EXPECT_NEAR(binary_entropy(0.2), binary_entropy(0.8), 1e-15);
  EXPECT_THROW(binary_entropy(-1e-9), DomainError);
  EXPECT_THROW(binary_entropy(1.5), DomainError);
}

TEST(VonNeumannEntropy, KnownStates) {
  EXPECT_EQ(von_neumann_entropy(basis_state("uU")), 0.0);
  EXPECT_NEAR(von_neumann_entropy(parse_state("uU + d0")), 1.0, 1e-12);
  const auto [psi1, psi2] = analytic_ground_pair(1.0);
  EXPECT_NEAR(von_neumann_entropy(psi1), 0.918295834054489514787, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(psi2), 0.918295834054489514787, 1e-12);
}

TEST(VonNeumannEntropy, ClosedFormEqualsSpectralRoute) {
  Gen g(204);
  for (int t = 0; t < 1000; ++t) {
    const auto psi = g.pure_state();
    ASSERT_NEAR(von_neumann_entropy(psi), reduced_state_entropy(psi), 1e-10);
  }
}

TEST(VonNeumannEntropy, MonotoneInConcurrence) {
  double prev = -1.0;
  for (int i = 1; i <= 99; ++i) {
    const double c = 0.01 * i;
    const double e = binary_entropy(minor_schmidt_weight(c));
    ASSERT_GT(e, prev);
    prev = e;
  }
}

TEST(MinorSchmidtWeight, ClampsRoundingOnly) {
  EXPECT_EQ(minor_schmidt_weight(1.0 + 1e-13), 0.5);
  EXPECT_THROW(minor_schmidt_weight(1.0 + 1e-9), NumericError);
}

TEST(Negativity, SeparableMixturesVanish) {
  for (double p : {0.0, 0.1, 0.5, 0.77, 1.0}) {
    const std::array<double, 2> w{p, 1.0 - p};
    const std::array<PureState, 2> st{basis_state("dD"), basis_state("uU")};
    EXPECT_EQ(negativity(density_of_mixture(w, st)), 0.0);
  }
}

TEST(Negativity, MaximallyEntangledPure) {
  EXPECT_NEAR(negativity(density_of_pure(parse_state("uU + d0"))), 0.5, 1e-12);
}

TEST(Negativity, IsotropicEquilibrium) {
  const auto [psi1, psi2] = analytic_ground_pair(1.0);
  const std::array<double, 2> w{0.5, 0.5};
  const std::array<PureState, 2> st{psi1, psi2};
  EXPECT_NEAR(negativity(density_of_mixture(w, st)), 1.0 / 3.0, 1e-12);
}

TEST(Negativity, PureStateBridge) {
  Gen g(205);
  for (int t = 0; t < 1000; ++t) {
    const auto psi = g.pure_state();
    const auto k = testing::schmidt_oracle(psi);
    // ||rho^TA||_1 = (kappa1 + kappa2)^2
    const double oracle = 0.5 * ((k[0] + k[1]) * (k[0] + k[1]) - 1.0);
    const double n = negativity(density_of_pure(psi));
    ASSERT_NEAR(n, oracle, 1e-10);
    ASSERT_NEAR(n, 0.5 * concurrence_norm(psi), 1e-10);
  }
}

TEST(Measures, LocalUnitaryInvariance) {
  Gen g(206);
  for (int t = 0; t < 300; ++t) {
    const auto psi = g.pure_state();
    const CMatrix u = kron(g.unitary(2), g.unitary(3));
    const auto phi = testing::apply(u, psi);
    ASSERT_NEAR(concurrence_norm(phi), concurrence_norm(psi), 1e-10);
    ASSERT_NEAR(von_neumann_entropy(phi), von_neumann_entropy(psi), 1e-10);
    const auto rho = g.density();
    const auto rho_u = DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
    ASSERT_NEAR(negativity(rho_u), negativity(rho), 1e-10);
  }
}

TEST(Negativity, ConvexOnTwoElementMixtures) {
  Gen g(207);
  for (int t = 0; t < 300; ++t) {
    const std::array<PureState, 2> st{g.pure_state(), g.pure_state()};
    const double p = g.uniform();
    const std::array<double, 2> w{p, 1.0 - p};
    const double mixed = negativity(density_of_mixture(w, st));
    const double bound = p * negativity(density_of_pure(st[0])) + (1.0 - p) * negativity(density_of_pure(st[1]));
    ASSERT_LE(mixed, bound + 1e-10);
  }
}

}  // namespace
}  // namespace qqent
