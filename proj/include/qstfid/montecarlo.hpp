#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "qstfid/channel.hpp"
#include "qstfid/kernels/kernels.hpp"
#include "qstfid/qstate.hpp"
#include "qstfid/rng.hpp"

namespace qstfid {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency(). The result
  /// never depends on this value.
  unsigned workers = 0;
};

/// Haar-random 2x2 unitary: Gram-Schmidt on a complex Ginibre matrix.
kernels::Mat2 haar_unitary_2(RandomStream& rng);

/// Normalised complex Gaussian vector of 2^n amplitudes.
PureState haar_pure_state(int n, RandomStream& rng);

/// Mean of fidelity(U psi, channels(U psi)) with U = U_1 (x) ... (x) U_n drawn
/// independently per sample. std_error = sample std / sqrt(samples).
Estimate mc_fidelity_local_unitary_orbit(const PureState& psi, TransitionAmplitude f, std::uint64_t samples,
                                         std::uint64_t seed, McOptions opts = {});
Estimate mc_fidelity_local_unitary_orbit(const PureState& psi, std::span<const TransitionAmplitude> fs,
                                         std::uint64_t samples, std::uint64_t seed, McOptions opts = {});

/// Mean fidelity over Haar-random n-qubit pure states.
Estimate mc_fidelity_haar(int n, TransitionAmplitude f, std::uint64_t samples, std::uint64_t seed,
                          McOptions opts = {});

struct InvariantAverages {
  Estimate j1, j2, j3, j4;
  /// <C^2> over Haar two-qubit states.
  Estimate concurrence_sq_2q;
};

/// Haar averages of J1..J4 over 3-qubit states (from pair concurrences and
/// the three-tangle) plus <C^2> over 2-qubit states.
InvariantAverages mc_invariant_averages(std::uint64_t samples, std::uint64_t seed, McOptions opts = {});

namespace detail {

/// Fixed-shape pairwise sum: the tree depends only on values.size().
double pairwise_sum(std::span<const double> values);

unsigned resolve_workers(unsigned requested, std::uint64_t samples);

/// Runs body(begin, end) over [0, samples) split into contiguous chunks.
template <class Body>
void parallel_chunks(std::uint64_t samples, unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(std::uint64_t{0}, samples);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (samples + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(samples, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + chunk);
    if (begin == end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

Estimate summarize(std::span<const double> values, std::uint64_t seed);

}  // namespace detail

/// Deterministic mean of fn(index) over index in [0, samples). Every value is
/// stored and reduced in a fixed order, so the result is bit-identical for
/// any worker count. fn must be safe to call concurrently.
template <class Fn>
Estimate estimate_mean(std::uint64_t samples, std::uint64_t seed, McOptions opts, Fn&& fn) {
  std::vector<double> values(samples);
  detail::parallel_chunks(samples, detail::resolve_workers(opts.workers, samples),
                          [&](std::uint64_t begin, std::uint64_t end) {
                            for (std::uint64_t i = begin; i < end; ++i) values[i] = fn(i);
                          });
  return detail::summarize(values, seed);
}

/// K estimates from one pass; fn(index) returns std::array<double, K>.
template <std::size_t K, class Fn>
std::array<Estimate, K> estimate_means(std::uint64_t samples, std::uint64_t seed, McOptions opts, Fn&& fn) {
  std::array<std::vector<double>, K> values;
  for (auto& v : values) v.resize(samples);
  detail::parallel_chunks(samples, detail::resolve_workers(opts.workers, samples),
                          [&](std::uint64_t begin, std::uint64_t end) {
                            for (std::uint64_t i = begin; i < end; ++i) {
                              const std::array<double, K> r = fn(i);
                              for (std::size_t k = 0; k < K; ++k) values[k][i] = r[k];
                            }
                          });
  std::array<Estimate, K> out;
  for (std::size_t k = 0; k < K; ++k) out[k] = detail::summarize(values[k], seed);
  return out;
}

}  // namespace qstfid
