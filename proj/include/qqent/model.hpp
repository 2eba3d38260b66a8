#pragma once

// Anisotropic Heisenberg coupling of a spin-1/2 and a spin-1 in a uniform
// field along z:
//
//   H = (J/2)(sx Sx + sy Sy + Delta sz Sz) + B (sz/2 + Sz)
//
// Closed forms below take J = 1; Delta is dimensionless and B is in units of J.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qqent/error.hpp"
#include "qqent/measures.hpp"
#include "qqent/qmat.hpp"
#include "qqent/states.hpp"

namespace qqent {

struct ModelParams {
  double J = 1.0;
  double delta = 0.0;
  double B = 0.0;
};

// Flat indices of the product basis.
namespace basis {
inline constexpr std::size_t uU = 0, u0 = 1, uD = 2, dU = 3, d0 = 4, dD = 5;
}

inline CMatrix hamiltonian(const ModelParams& p) {
  if (!(p.J >= 0.0) || !std::isfinite(p.delta) || !std::isfinite(p.B))
    throw ValidationError("hamiltonian: require J >= 0 and finite parameters");
  const double dj = p.delta * p.J;
  const std::array<double, kDim> diag{0.5 * dj + 1.5 * p.B, 0.5 * p.B,       -0.5 * p.B - 0.5 * dj,
                                      0.5 * p.B - 0.5 * dj, -0.5 * p.B, 0.5 * dj - 1.5 * p.B};
  CMatrix h = CMatrix::diagonal(diag);
  const double hop = p.J / std::sqrt(2.0);
  h(basis::u0, basis::dU) = h(basis::dU, basis::u0) = hop;
  h(basis::uD, basis::d0) = h(basis::d0, basis::uD) = hop;
  return h;
}

inline HermEig spectrum(const ModelParams& p) { return eig_hermitian(hamiltonian(p)); }

struct GroundSubspace {
  double energy = 0.0;
  std::vector<PureState> basis;
  std::size_t degeneracy() const { return basis.size(); }
};

inline double default_degeneracy_tol(const ModelParams& p) {
  return 1e-9 * std::max({1.0, std::abs(p.J), std::abs(p.B)});
}

/// All eigenvectors within `degeneracy_tol` of the lowest eigenvalue.
inline GroundSubspace ground_subspace(const ModelParams& p, std::optional<double> degeneracy_tol = std::nullopt) {
  const double tol = degeneracy_tol.value_or(default_degeneracy_tol(p));
  if (!(tol > 0.0)) throw ValidationError("ground_subspace: degeneracy tolerance must be positive");
  const HermEig eig = spectrum(p);
  GroundSubspace g;
  g.energy = eig.eigenvalues.front();
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] - g.energy > tol) break;
    Amplitudes a{};
    std::copy(eig.eigenvectors[k].begin(), eig.eigenvectors[k].end(), a.begin());
    g.basis.push_back(PureState::normalized(a));
  }
  return g;
}

// The three distinct B = 0 levels: Delta/2 and (-Delta -+ sqrt(8 + Delta^2))/4.
inline std::array<double, 3> zero_field_levels(double delta) {
  const double s = std::sqrt(8.0 + delta * delta);
  return {0.5 * delta, 0.25 * (-delta - s), 0.25 * (-delta + s)};
}

/// Degenerate B = 0 ground doublet for Delta >= -1 (J = 1):
///   psi1 = (|d0> - x+ |uD>) / F+,   psi2 = (|dU> + x- |u0>) / F-
/// with x+- = (Delta +- sqrt(Delta^2 + 8)) / (2 sqrt 2) and F+- = sqrt(x+-^2 + 1).
/// At Delta = -1 these become the phi1, phi2 members of the quadruplet.
inline std::pair<PureState, PureState> analytic_ground_pair(double delta) {
  if (!(delta >= -1.0)) throw DomainError("analytic_ground_pair: requires Delta >= -1");
  const double s = std::sqrt(delta * delta + 8.0);
  const double xp = (delta + s) / (2.0 * std::sqrt(2.0));
  const double xm = (delta - s) / (2.0 * std::sqrt(2.0));
  const double fp = std::sqrt(xp * xp + 1.0);
  const double fm = std::sqrt(xm * xm + 1.0);
  Amplitudes a1{}, a2{};
  a1[basis::d0] = 1.0 / fp;
  a1[basis::uD] = -xp / fp;
  a2[basis::dU] = 1.0 / fm;
  a2[basis::u0] = xm / fm;
  return {PureState::normalized(a1), PureState::normalized(a2)};
}

/// Four-fold ground space at Delta = -1, B = 0, ordered as the mixture
/// weights p1..p4: |dD>, |uU>, phi1, phi2.
inline std::array<PureState, 4> critical_ground_basis() {
  auto [phi1, phi2] = analytic_ground_pair(-1.0);
  return {PureState::basis(basis::dD), PureState::basis(basis::uU), phi1, phi2};
}

// Half-width (3 Delta + sqrt(8 + Delta^2)) / 4 of the entangled field window.
inline double entangled_window(double delta) { return 0.25 * (3.0 * delta + std::sqrt(8.0 + delta * delta)); }

/// Fields at which the ground level crosses. {-w, 0, +w} for Delta > -1,
/// {0} otherwise.
inline std::vector<double> critical_fields(double delta) {
  if (delta > -1.0) {
    const double w = entangled_window(delta);
    return {-w, 0.0, w};
  }
  return {0.0};
}

inline constexpr double kCriticalFieldTol = 1e-12;

/// Concurrence norm of the unique ground state at field B (Delta > -1):
///   4 sqrt2 (s - Delta) / (8 + (s - Delta)^2),  s = sqrt(8 + Delta^2)
/// inside |B| < w, and 0 outside. Returns nullopt at a level crossing, where
/// the ground state is degenerate and only a subspace average is meaningful.
inline std::optional<double> ground_concurrence_field(double delta, double b) {
  if (!(delta > -1.0)) throw DomainError("ground_concurrence_field: requires Delta > -1");
  for (double bc : critical_fields(delta))
    if (std::abs(b - bc) <= kCriticalFieldTol) return std::nullopt;
  if (std::abs(b) > entangled_window(delta)) return 0.0;
  const double t = std::sqrt(8.0 + delta * delta) - delta;
  return 4.0 * std::sqrt(2.0) * t / (8.0 + t * t);
}

/// Concurrence of c psi1 + d psi2 from the squared-components expansion
///   | 2 (4c^4 + 4d^4 + c^2 d^2 (4 + Delta^2 + Delta s)) / (8 + Delta^2) |^(1/2).
/// For real c, d this is concurrence_norm of the superposition; for complex
/// coefficients it is bilinear_concurrence.
inline double superposition_concurrence(cplx c, cplx d, double delta) {
  if (std::abs(abs2(c) + abs2(d) - 1.0) > kNormTol)
    throw ValidationError("superposition_concurrence: |c|^2 + |d|^2 != 1");
  if (!(delta >= -1.0)) throw DomainError("superposition_concurrence: requires Delta >= -1");
  const double s = std::sqrt(8.0 + delta * delta);
  const cplx c2 = c * c;
  const cplx d2 = d * d;
  const cplx num = 2.0 * (4.0 * c2 * c2 + 4.0 * d2 * d2 + c2 * d2 * (4.0 + delta * delta + delta * s));
  return std::sqrt(std::abs(num / (8.0 + delta * delta)));
}

/// Negativity of p |psi1><psi1| + (1 - p) |psi2><psi2| in closed form:
///   Delta / (4 s) - 1/4 + f(p) + f(1 - p),
///   f(p) = sqrt((16 - 32p + (20 + Delta^2 - Delta s) p^2) / (8 (8 + Delta^2))).
inline double mixture_negativity_closed(double p, double delta) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("mixture_negativity_closed: p outside [0, 1]");
  if (!(delta >= -1.0) || !std::isfinite(delta))
    throw ValidationError("mixture_negativity_closed: requires finite Delta >= -1");
  const double d2 = delta * delta;
  const double s = std::sqrt(8.0 + d2);
  const double quad = 20.0 + d2 - delta * s;
  auto f = [&](double q) {
    return std::sqrt(std::max(0.0, (16.0 - 32.0 * q + quad * q * q) / (8.0 * (8.0 + d2))));
  };
  const double n = delta / (4.0 * s) - 0.25 + f(p) + f(1.0 - p);
  return n < 0.0 && n >= -kClampTol ? 0.0 : n;
}

/// Negativity of p1|dD><dD| + p2|uU><uU| + p3|phi1><phi1| + p4|phi2><phi2|.
inline double critical_mixture_negativity(double p1, double p2, double p3, double p4) {
  const std::array<double, 4> w{p1, p2, p3, p4};
  const auto states = critical_ground_basis();
  return negativity(density_of_mixture(w, states));
}

/// Negativity of the uniform mixture over the B = 0 ground space (the T -> 0
/// equilibrium state): 1/2 weights on the doublet, 1/4 on the quadruplet.
inline double equilibrium_negativity(double delta) {
  if (delta < -1.0) {
    const std::array<double, 2> w{0.5, 0.5};
    const std::array<PureState, 2> st{PureState::basis(basis::dD), PureState::basis(basis::uU)};
    return negativity(density_of_mixture(w, st));
  }
  if (delta == -1.0) return critical_mixture_negativity(0.25, 0.25, 0.25, 0.25);
  return mixture_negativity_closed(0.5, delta);
}

/// Fields where the lowest eigenvalue has a kink on a uniform grid, found
/// from second differences exceeding 10x their median. Each cluster of
/// flagged points is reported at its centre.
inline std::vector<double> detect_level_crossings(double delta, double b_min, double b_max, std::size_t steps,
                                                  double J = 1.0) {
  if (steps < 3 || !(b_max > b_min)) throw ValidationError("detect_level_crossings: need >= 3 points and b_max > b_min");
  const double h = (b_max - b_min) / static_cast<double>(steps - 1);
  std::vector<double> b(steps), e(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    b[i] = b_min + h * static_cast<double>(i);
    e[i] = spectrum({J, delta, b[i]}).eigenvalues.front();
  }
  std::vector<double> d2(steps, 0.0);
  for (std::size_t i = 1; i + 1 < steps; ++i) d2[i] = std::abs(e[i + 1] - 2.0 * e[i] + e[i - 1]);
  std::vector<double> sorted(d2.begin() + 1, d2.end() - 1);
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double baseline = std::max(sorted[sorted.size() / 2], 1e-13);

  std::vector<double> out;
  std::size_t i = 1;
  while (i + 1 < steps) {
    if (d2[i] <= 10.0 * baseline) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 2 < steps && d2[j + 1] > 10.0 * baseline) ++j;
    out.push_back(0.5 * (b[i] + b[j]));
    i = j + 1;
  }
  return out;
}

}  // namespace qqent
