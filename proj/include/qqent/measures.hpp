#pragma once

// Entanglement measures for qubit (x) qutrit systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "qqent/error.hpp"
#include "qqent/qmat.hpp"
#include "qqent/states.hpp"

namespace qqent {

// Boundary slack for radicands and negativities before clamping to the domain.
inline constexpr double kClampTol = 1e-12;

/// Components over the positive roots of A2, realised by the qutrit raising
/// operators E12, E23, E13 paired with (sigma+ - sigma-) on the qubit.
/// Each component is <psi|(s+ - s-) (x) (E_a - E_-a)|psi*>, which is twice a
/// 2x2 minor of the conjugated coefficient matrix:
///   C1 = 2 conj(a11 a22 - a12 a21)
///   C2 = 2 conj(a12 a23 - a13 a22)
///   C3 = 2 conj(a11 a23 - a13 a21)
struct ConcurrenceVector {
  std::array<cplx, 3> components{};

  double norm() const { return std::sqrt(abs2(components[0]) + abs2(components[1]) + abs2(components[2])); }
};

inline ConcurrenceVector concurrence_vector(const PureState& psi) {
  auto a = [&](std::size_t mu, std::size_t j) { return std::conj(psi.coeff(mu, j)); };
  ConcurrenceVector c;
  c.components[0] = 2.0 * (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
  c.components[1] = 2.0 * (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1));
  c.components[2] = 2.0 * (a(0, 0) * a(1, 2) - a(0, 2) * a(1, 0));
  return c;
}

// sqrt(|C1|^2 + |C2|^2 + |C3|^2) = 2 kappa1 kappa2. Local-unitary invariant.
inline double concurrence_norm(const PureState& psi) { return concurrence_vector(psi).norm(); }

/// sqrt(|C1^2 + C2^2 + C3^2|): the squared-components expansion taken
/// literally for complex amplitudes. Equal to concurrence_norm whenever the
/// amplitudes are real up to a global phase, smaller in general. Default
/// integrand for Haar averages over degenerate ground subspaces; not
/// invariant under complex local unitaries.
inline double bilinear_concurrence(const PureState& psi) {
  const auto c = concurrence_vector(psi).components;
  return std::sqrt(std::abs(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]));
}

enum class ConcurrenceForm {
  hermitian,  // concurrence_norm
  bilinear,   // bilinear_concurrence
};

inline double concurrence(const PureState& psi, ConcurrenceForm form) {
  return form == ConcurrenceForm::hermitian ? concurrence_norm(psi) : bilinear_concurrence(psi);
}

// h(x) in bits, with 0 log 0 = 0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// Smaller Schmidt weight kappa2^2 = (1 - sqrt(1 - |C|^2)) / 2.
inline double minor_schmidt_weight(double c_norm) {
  double rad = 1.0 - c_norm * c_norm;
  if (rad < 0.0) {
    if (rad < -kClampTol) throw NumericError("concurrence norm exceeds 1 beyond rounding");
    rad = 0.0;
  }
  return std::clamp(0.5 * (1.0 - std::sqrt(rad)), 0.0, 0.5);
}

// Entanglement entropy (bits) as a function of the concurrence norm alone.
inline double von_neumann_entropy(const PureState& psi) {
  return binary_entropy(minor_schmidt_weight(concurrence_norm(psi)));
}

// -sum lambda log2 lambda over the spectrum of the qubit marginal.
inline double reduced_state_entropy(const PureState& psi) {
  const CMatrix a = psi.coefficient_matrix();
  double s = 0.0;
  for (double lam : eigvals_hermitian(a * a.adjoint()))
    if (lam > 0.0) s -= lam * std::log2(lam);
  return s;
}

/// (||rho^{T_A}||_1 - 1) / 2
inline double negativity(const DensityMatrix& rho) {
  const double n = 0.5 * (trace_norm(partial_transpose_a(rho.matrix())) - 1.0);
  if (n < 0.0) {
    if (n < -kClampTol) throw NumericError("negativity: trace norm below 1 beyond rounding");
    return 0.0;
  }
  return n;
}

}  // namespace qqent
