#pragma once

// Small dense complex matrices: Hermitian eigensolver (cyclic Jacobi),
// partial trace / partial transpose over a qubit (x) qutrit split, trace norm.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qqent/error.hpp"

namespace qqent {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;

inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw ValidationError("CMatrix: dimensions must be positive");
  }
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw ValidationError("CMatrix: dimensions must be positive");
    if (data_.size() != rows * cols) throw ValidationError("CMatrix: entry count != rows*cols");
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::span<const double> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  // |v><v|
  static CMatrix outer(std::span<const cplx> v) {
    CMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> entries() const { return data_; }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  CMatrix adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  CMatrix transpose() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool is_hermitian(double tol = kHermitianTol) const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) s += abs2(z);
    return std::sqrt(s);
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("CMatrix: inner dimensions differ");
    CMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  std::vector<cplx> apply(std::span<const cplx> v) const {
    if (v.size() != cols_) throw ValidationError("CMatrix: vector length != cols");
    std::vector<cplx> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  void require_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("CMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

// Ascending eigenvalues; eigenvectors[k] pairs with eigenvalues[k].
struct HermEig {
  std::vector<double> eigenvalues;
  std::vector<std::vector<cplx>> eigenvectors;
};

namespace detail {

// Rotate so the first component of largest modulus is real and nonnegative.
inline void fix_phase(std::vector<cplx>& v) {
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      arg = i;
    }
  }
  if (best <= 0.0) return;
  const cplx phase = std::conj(v[arg]) / best;
  for (auto& z : v) z *= phase;
  v[arg] = cplx(std::abs(v[arg]), 0.0);
}

inline double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += abs2(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

inline constexpr double kJacobiThreshold = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then applies the real symmetric 2x2 rotation. Sweeps stop once the
/// off-diagonal Frobenius norm drops below 1e-14 (scaled by max(1, ||M||_F)).
/// Degenerate eigenspaces come back in an arbitrary orthonormal basis; compare
/// them by projector.
inline HermEig eig_hermitian(const CMatrix& m) {
  if (!m.square()) throw ValidationError("eig_hermitian: matrix is not square");
  if (!m.is_hermitian()) throw ValidationError("eig_hermitian: matrix is not Hermitian");
  const std::size_t n = m.rows();

  CMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  CMatrix v = CMatrix::identity(n);
  const double threshold = kJacobiThreshold * std::max(1.0, m.frobenius());

  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;  // e^{i phi}
        const cplx phase_c = std::conj(phase);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);

        // A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
        const cplx gqp = -s * phase_c;
        const cplx gqq = c * phase_c;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * s + akq * gqq;
        }
        // A <- G^dagger A
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * s + vkq * gqq;
        }
      }
    }
  }
  if (sweep == kJacobiMaxSweeps && detail::off_diagonal_norm(a) >= threshold)
    throw NumericError("eig_hermitian: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(a(k, k).real());
    std::vector<cplx> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
    detail::fix_phase(col);
    out.eigenvectors.push_back(std::move(col));
  }
  return out;
}

inline std::vector<double> eigvals_hermitian(const CMatrix& m) { return eig_hermitian(m).eigenvalues; }

// Dimensions of the bipartite split: qubit (A) outer index, qutrit (B) inner.
inline constexpr std::size_t kDimA = 2;
inline constexpr std::size_t kDimB = 3;
inline constexpr std::size_t kDim = kDimA * kDimB;

enum class TraceOut { A, B };

namespace detail {
inline void require_joint_shape(const CMatrix& rho, const char* who) {
  if (rho.rows() != kDim || rho.cols() != kDim)
    throw ValidationError(std::string(who) + ": expected a 6x6 matrix");
}
}  // namespace detail

/// Trace over one subsystem of a 6x6 density matrix. TraceOut::B yields the
/// 2x2 qubit marginal, TraceOut::A the 3x3 qutrit marginal.
inline CMatrix partial_trace(const CMatrix& rho, TraceOut part) {
  detail::require_joint_shape(rho, "partial_trace");
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw ValidationError("partial_trace: trace != 1");
  if (part == TraceOut::B) {
    CMatrix out(kDimA, kDimA);
    for (std::size_t mu = 0; mu < kDimA; ++mu)
      for (std::size_t nu = 0; nu < kDimA; ++nu)
        for (std::size_t j = 0; j < kDimB; ++j) out(mu, nu) += rho(kDimB * mu + j, kDimB * nu + j);
    return out;
  }
  CMatrix out(kDimB, kDimB);
  for (std::size_t j = 0; j < kDimB; ++j)
    for (std::size_t k = 0; k < kDimB; ++k)
      for (std::size_t mu = 0; mu < kDimA; ++mu) out(j, k) += rho(kDimB * mu + j, kDimB * mu + k);
  return out;
}

// rho[(mu,j),(nu,k)] -> rho[(nu,j),(mu,k)]
inline CMatrix partial_transpose_a(const CMatrix& rho) {
  detail::require_joint_shape(rho, "partial_transpose_a");
  CMatrix out(kDim, kDim);
  for (std::size_t mu = 0; mu < kDimA; ++mu)
    for (std::size_t nu = 0; nu < kDimA; ++nu)
      for (std::size_t j = 0; j < kDimB; ++j)
        for (std::size_t k = 0; k < kDimB; ++k)
          out(kDimB * mu + j, kDimB * nu + k) = rho(kDimB * nu + j, kDimB * mu + k);
  return out;
}

// Sum of |eigenvalues|; Hermitian input only.
inline double trace_norm(const CMatrix& m) {
  if (!m.is_hermitian()) throw ValidationError("trace_norm: matrix is not Hermitian");
  double s = 0.0;
  for (double l : eig_hermitian(m).eigenvalues) s += std::abs(l);
  return s;
}

}  // namespace qqent
