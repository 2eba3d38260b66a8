#pragma once

// Qubit (x) qutrit states. Flat index 3*mu + j with mu in {up=0, down=1} for
// the spin-1/2 and j in {+1=0, 0=1, -1=2} for the spin-1, i.e. the order
// |uU>, |u0>, |uD>, |dU>, |d0>, |dD>.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqent/error.hpp"
#include "qqent/qmat.hpp"

namespace qqent {

inline constexpr double kNormTol = 1e-12;

using Amplitudes = std::array<cplx, kDim>;

class PureState {
 public:
  // Throws unless sum |a|^2 = 1 within 1e-12.
  explicit PureState(const Amplitudes& amplitudes) : a_(amplitudes) {
    if (std::abs(norm2() - 1.0) > kNormTol) throw ValidationError("PureState: amplitudes are not normalized");
  }

  // Divides by the Euclidean norm first. Throws for the zero vector.
  static PureState normalized(Amplitudes amplitudes) {
    double n2 = 0.0;
    for (const auto& z : amplitudes) n2 += abs2(z);
    if (!(n2 > 0.0)) throw ValidationError("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : amplitudes) z *= inv;
    return PureState(amplitudes);
  }

  static PureState basis(std::size_t index) {
    if (index >= kDim) throw ValidationError("PureState: basis index out of range");
    Amplitudes a{};
    a[index] = 1.0;
    return PureState(a);
  }

  const Amplitudes& amplitudes() const { return a_; }
  std::span<const cplx> span() const { return a_; }
  const cplx& operator[](std::size_t i) const { return a_[i]; }

  // Coefficient matrix entry a_{mu j}.
  const cplx& coeff(std::size_t mu, std::size_t j) const { return a_[kDimB * mu + j]; }

  CMatrix coefficient_matrix() const { return CMatrix(kDimA, kDimB, std::vector<cplx>(a_.begin(), a_.end())); }

 private:
  double norm2() const {
    double s = 0.0;
    for (const auto& z : a_) s += abs2(z);
    return s;
  }

  Amplitudes a_;
};

// <phi|psi>
inline cplx inner(const PureState& phi, const PureState& psi) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) s += std::conj(phi[i]) * psi[i];
  return s;
}

// |<phi|psi>|; equals 1 iff the states agree up to a global phase.
inline double fidelity_amplitude(const PureState& phi, const PureState& psi) { return std::abs(inner(phi, psi)); }

// Tokens uU u0 uD dU d0 dD.
inline std::size_t basis_index(std::string_view token) {
  if (token.size() != 2) throw ValidationError("basis token must have two characters: " + std::string(token));
  std::size_t mu = 0;
  switch (token[0]) {
    case 'u': mu = 0; break;
    case 'd': mu = 1; break;
    default: throw ValidationError("bad qubit label in basis token: " + std::string(token));
  }
  std::size_t j = 0;
  switch (token[1]) {
    case 'U': j = 0; break;
    case '0': j = 1; break;
    case 'D': j = 2; break;
    default: throw ValidationError("bad qutrit label in basis token: " + std::string(token));
  }
  return kDimB * mu + j;
}

inline PureState basis_state(std::string_view token) { return PureState::basis(basis_index(token)); }

/// Parses a real linear combination of basis tokens such as "uU + d0" or
/// "0.5*dU - 0.25*u0" and normalizes the result.
inline PureState parse_state(std::string_view text) {
  Amplitudes amp{};
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  bool first = true;
  skip_ws();
  if (pos == text.size()) throw ValidationError("parse_state: empty state literal");
  while (pos < text.size()) {
    double sign = 1.0;
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (!first) {
      throw ValidationError("parse_state: expected '+' or '-' between terms");
    }
    skip_ws();
    double coeff = 1.0;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      const char* begin = text.data() + pos;
      auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), coeff);
      if (ec != std::errc{}) throw ValidationError("parse_state: bad coefficient");
      pos += static_cast<std::size_t>(ptr - begin);
      skip_ws();
      if (pos >= text.size() || text[pos] != '*') throw ValidationError("parse_state: expected '*' after coefficient");
      ++pos;
      skip_ws();
    }
    if (pos + 2 > text.size()) throw ValidationError("parse_state: truncated basis token");
    amp[basis_index(text.substr(pos, 2))] += sign * coeff;
    pos += 2;
    skip_ws();
    first = false;
  }
  return PureState::normalized(amp);
}

/// A validated density matrix: 6x6, Hermitian, unit trace, PSD up to -1e-10.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(CMatrix m) {
    if (m.rows() != kDim || m.cols() != kDim) throw ValidationError("DensityMatrix: expected 6x6");
    if (!m.is_hermitian()) throw ValidationError("DensityMatrix: not Hermitian");
    if (std::abs(m.trace() - 1.0) > kNormTol) throw ValidationError("DensityMatrix: trace != 1");
    const auto ev = eigvals_hermitian(m);
    if (ev.front() < -1e-10) throw ValidationError("DensityMatrix: not positive semidefinite");
    return DensityMatrix(std::move(m));
  }

  const CMatrix& matrix() const { return m_; }
  double purity() const { return (m_ * m_).trace().real(); }

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}

  friend DensityMatrix density_of_pure(const PureState& psi);
  friend DensityMatrix density_of_mixture(std::span<const double> weights, std::span<const PureState> states);

  CMatrix m_;
};

inline DensityMatrix density_of_pure(const PureState& psi) { return DensityMatrix(CMatrix::outer(psi.span())); }

/// sum_i w_i |psi_i><psi_i|. Weights must be nonnegative and sum to 1 within
/// 1e-12; they are never renormalized.
inline DensityMatrix density_of_mixture(std::span<const double> weights, std::span<const PureState> states) {
  if (weights.size() != states.size()) throw ValidationError("density_of_mixture: length mismatch");
  if (weights.empty()) throw ValidationError("density_of_mixture: empty mixture");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("density_of_mixture: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTol) throw ValidationError("density_of_mixture: weights do not sum to 1");
  CMatrix rho(kDim, kDim);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (weights[k] == 0.0) continue;
    const auto& a = states[k].amplitudes();
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) rho(i, j) += weights[k] * a[i] * std::conj(a[j]);
  }
  return DensityMatrix(std::move(rho));
}

struct SchmidtDecomp {
  std::array<double, 2> kappa{};                 // kappa[0] >= kappa[1] >= 0
  std::array<std::array<cplx, kDimA>, 2> left{};   // qubit factors
  std::array<std::array<cplx, kDimB>, 2> right{};  // qutrit factors

  PureState reconstruct() const {
    Amplitudes a{};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t mu = 0; mu < kDimA; ++mu)
        for (std::size_t j = 0; j < kDimB; ++j) a[kDimB * mu + j] += kappa[i] * left[i][mu] * right[i][j];
    return PureState::normalized(a);
  }
};

/// Schmidt decomposition from the 2x2 marginal a a^dagger. kappa^2 are its
/// eigenvalues; the qutrit factors are y_i = (x_i^dagger a) / kappa_i.
inline SchmidtDecomp schmidt(const PureState& psi) {
  const CMatrix a = psi.coefficient_matrix();
  const CMatrix rho_a = a * a.adjoint();
  const HermEig eig = eig_hermitian(rho_a);

  SchmidtDecomp out;
  for (std::size_t i = 0; i < 2; ++i) {
    // descending order
    const std::size_t k = 1 - i;
    const double lam = std::max(0.0, eig.eigenvalues[k]);
    out.kappa[i] = std::sqrt(lam);
    for (std::size_t mu = 0; mu < kDimA; ++mu) out.left[i][mu] = eig.eigenvectors[k][mu];
  }

  for (std::size_t i = 0; i < 2; ++i) {
    std::array<cplx, kDimB> y{};
    for (std::size_t j = 0; j < kDimB; ++j)
      for (std::size_t mu = 0; mu < kDimA; ++mu) y[j] += std::conj(out.left[i][mu]) * a(mu, j);
    double n2 = 0.0;
    for (const auto& z : y) n2 += abs2(z);
    if (n2 > 1e-28) {
      const double inv = 1.0 / std::sqrt(n2);
      for (auto& z : y) z *= inv;
      out.right[i] = y;
      continue;
    }
    // kappa_i == 0: any unit vector orthogonal to the other factor.
    const auto& other = out.right[0];
    for (std::size_t e = 0; e < kDimB; ++e) {
      std::array<cplx, kDimB> cand{};
      cand[e] = 1.0;
      const cplx ov = std::conj(other[e]);
      for (std::size_t j = 0; j < kDimB; ++j) cand[j] -= ov * other[j];
      double c2 = 0.0;
      for (const auto& z : cand) c2 += abs2(z);
      if (c2 > 0.25) {
        const double inv = 1.0 / std::sqrt(c2);
        for (auto& z : cand) z *= inv;
        out.right[i] = cand;
        break;
      }
    }
  }
  return out;
}

}  // namespace qqent
