#pragma once

// Monte Carlo averages over degenerate ground subspaces: Haar-uniform pure
// states in a subspace and flat-Dirichlet mixing weights.
//
// Estimates are reproducible regardless of worker count. The sample index
// range is cut into fixed chunks of kChunkSize; chunk c draws from
// rng.substream(c) and chunk statistics are merged in chunk order.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "qqent/error.hpp"
#include "qqent/measures.hpp"
#include "qqent/model.hpp"
#include "qqent/random.hpp"
#include "qqent/states.hpp"

namespace qqent {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kChunkSize = 4096;
inline constexpr std::size_t kMinSamples = 100;
inline constexpr double kOrthonormalTol = 1e-10;

namespace detail {

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  // Chan et al. pairwise merge
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double tot = na + nb;
    mean += d * nb / tot;
    m2 += o.m2 + d * d * na * nb / tot;
    n += o.n;
  }
};

inline void require_orthonormal(std::span<const PureState> basis) {
  if (basis.empty()) throw ValidationError("subspace basis is empty");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (std::abs(inner(basis[i], basis[j])) > kOrthonormalTol) throw ValidationError("subspace basis is not orthonormal");
}

inline PureState haar_combination(std::span<const PureState> basis, RandomStream& rng) {
  Amplitudes amp{};
  for (const auto& b : basis) {
    const auto [x, y] = rng.normal_pair();
    const cplx c(x, y);
    for (std::size_t i = 0; i < kDim; ++i) amp[i] += c * b[i];
  }
  return PureState::normalized(amp);
}

}  // namespace detail

/// Haar-uniform state in span(basis): 2k standard normals form k complex
/// coefficients, normalized. Uniform on S^{2k-1}.
inline PureState sample_haar_state(std::span<const PureState> basis, RandomStream& rng) {
  detail::require_orthonormal(basis);
  return detail::haar_combination(basis, rng);
}

/// Flat Dirichlet draw on the (k-1)-simplex from normalized exponentials.
inline std::vector<double> sample_simplex(std::size_t k, RandomStream& rng) {
  if (k == 0) throw ValidationError("sample_simplex: k must be positive");
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

inline std::size_t default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Mean and standard error of `sample(stream)` over n draws. `sample` must be
/// callable concurrently on distinct streams. workers == 0 picks the
/// hardware concurrency; the result does not depend on it.
template <class Sampler>
McEstimate estimate_mean(std::size_t n, const RandomStream& rng, Sampler&& sample, std::size_t workers = 0) {
  if (n < kMinSamples) throw ValidationError("Monte Carlo estimate needs at least 100 samples");
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<detail::Moments> parts(chunks);

  auto run_chunk = [&](std::size_t c) {
    RandomStream sub = rng.substream(c);
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(n, begin + kChunkSize);
    detail::Moments m;
    for (std::size_t i = begin; i < end; ++i) m.add(sample(sub));
    parts[c] = m;
  };

  if (workers == 0) workers = default_workers();
  workers = std::min(workers, chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }

  detail::Moments total;
  for (const auto& m : parts) total.merge(m);
  McEstimate est;
  est.n = total.n;
  est.mean = total.mean;
  est.std_error = std::sqrt(total.m2 / static_cast<double>(total.n - 1)) / std::sqrt(static_cast<double>(total.n));
  est.seed = rng.seed();
  return est;
}

/// Haar average of the concurrence over span(basis). Defaults to the bilinear
/// integrand; pass ConcurrenceForm::hermitian to average 2 kappa1 kappa2.
inline McEstimate average_concurrence(std::span<const PureState> basis, std::size_t n, const RandomStream& rng,
                                      ConcurrenceForm form = ConcurrenceForm::bilinear, std::size_t workers = 0) {
  detail::require_orthonormal(basis);
  return estimate_mean(
      n, rng, [&](RandomStream& s) { return concurrence(detail::haar_combination(basis, s), form); }, workers);
}

/// Average negativity over mixtures of the B = 0 ground states (J = 1).
///   Delta > -1: p psi1 + (1-p) psi2 with p uniform on [0, 1].
///   Delta = -1: flat Dirichlet weights over the four-fold ground space.
///   Delta < -1: mixtures of |uU>, |dD> are separable, exactly 0.
inline McEstimate average_mixture_negativity(double delta, std::size_t n, const RandomStream& rng,
                                             std::size_t workers = 0) {
  if (n < kMinSamples) throw ValidationError("Monte Carlo estimate needs at least 100 samples");
  if (delta < -1.0) return McEstimate{0.0, 0.0, n, rng.seed()};
  if (delta == -1.0) {
    const auto states = critical_ground_basis();
    return estimate_mean(
        n, rng,
        [&](RandomStream& s) {
          const auto w = sample_simplex(4, s);
          return negativity(density_of_mixture(w, states));
        },
        workers);
  }
  return estimate_mean(
      n, rng, [&](RandomStream& s) { return mixture_negativity_closed(sample_simplex(2, s)[0], delta); }, workers);
}

}  // namespace qqent
