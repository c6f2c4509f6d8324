#include "qstfid/montecarlo.hpp"

#include <cmath>
#include <string>

#include "qstfid/entanglement.hpp"
#include "qstfid/errors.hpp"

namespace qstfid {
namespace detail {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

unsigned resolve_workers(unsigned requested, std::uint64_t samples) {
  unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  // Below a few thousand samples threads cost more than they save.
  if (samples < 4096) w = 1;
  return w;
}

Estimate summarize(std::span<const double> values, std::uint64_t seed) {
  const std::size_t n = values.size();
  if (n == 0) throw DomainError("Monte Carlo needs at least one sample");
  const double mean = pairwise_sum(values) / static_cast<double>(n);
  double se = 0.0;
  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    se = std::sqrt(var / static_cast<double>(n));
  }
  return {mean, se, n, seed};
}

}  // namespace detail

namespace {

void check_samples(std::uint64_t samples) {
  if (samples < 1) throw DomainError("Monte Carlo needs at least one sample");
}

// Fidelity of psi after the parallel channels, on scratch buffers.
double channel_fidelity(std::span<const Complex> psi, int n, std::span<const TransitionAmplitude> fs,
                        std::vector<Complex>& rho) {
  kernels::outer_product(psi, rho);
  for (int q = 1; q <= n; ++q) kernels::apply_qubit_channel(rho, n, q, fs[static_cast<std::size_t>(q - 1)].value());
  return std::clamp(kernels::expectation(psi, rho), 0.0, 1.0);
}

}  // namespace

kernels::Mat2 haar_unitary_2(RandomStream& rng) {
  // Columns of a Ginibre matrix, orthonormalised. The Gram-Schmidt QR has a
  // positive-real R diagonal, which is exactly the phase fix that makes Q Haar.
  Complex a0 = rng.complex_normal();
  Complex a1 = rng.complex_normal();
  Complex b0 = rng.complex_normal();
  Complex b1 = rng.complex_normal();
  const double na = std::sqrt(std::norm(a0) + std::norm(a1));
  a0 /= na;
  a1 /= na;
  const Complex proj = std::conj(a0) * b0 + std::conj(a1) * b1;
  b0 -= proj * a0;
  b1 -= proj * a1;
  const double nb = std::sqrt(std::norm(b0) + std::norm(b1));
  b0 /= nb;
  b1 /= nb;
  return {a0, b0, a1, b1};
}

PureState haar_pure_state(int n, RandomStream& rng) {
  check_qubit_count(n);
  std::vector<Complex> amps(std::size_t{1} << n);
  for (Complex& a : amps) a = rng.complex_normal();
  return make_pure_state(std::move(amps));
}

Estimate mc_fidelity_local_unitary_orbit(const PureState& psi, std::span<const TransitionAmplitude> fs,
                                         std::uint64_t samples, std::uint64_t seed, McOptions opts) {
  check_samples(samples);
  const int n = psi.n_qubits();
  if (fs.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("mc_fidelity_local_unitary_orbit: " + std::to_string(fs.size()) + " amplitudes for " +
                     std::to_string(n) + " qubits");
  }
  const std::size_t dim = psi.dimension();
  return estimate_mean(samples, seed, opts, [&](std::uint64_t index) {
    thread_local std::vector<Complex> work;
    thread_local std::vector<Complex> rho;
    work.assign(psi.amplitudes().begin(), psi.amplitudes().end());
    rho.resize(dim * dim);
    RandomStream rng(seed, index, StreamDomain::kLocalUnitary);
    for (int q = 1; q <= n; ++q) kernels::apply_qubit_unitary(work, n, q, haar_unitary_2(rng));
    return channel_fidelity(work, n, fs, rho);
  });
}

Estimate mc_fidelity_local_unitary_orbit(const PureState& psi, TransitionAmplitude f, std::uint64_t samples,
                                         std::uint64_t seed, McOptions opts) {
  const std::vector<TransitionAmplitude> fs(static_cast<std::size_t>(psi.n_qubits()), f);
  return mc_fidelity_local_unitary_orbit(psi, fs, samples, seed, opts);
}

Estimate mc_fidelity_haar(int n, TransitionAmplitude f, std::uint64_t samples, std::uint64_t seed,
                          McOptions opts) {
  check_samples(samples);
  check_qubit_count(n);
  const std::vector<TransitionAmplitude> fs(static_cast<std::size_t>(n), f);
  const std::size_t dim = std::size_t{1} << n;
  return estimate_mean(samples, seed, opts, [&](std::uint64_t index) {
    thread_local std::vector<Complex> rho;
    rho.resize(dim * dim);
    RandomStream rng(seed, index, StreamDomain::kHaarState);
    const PureState psi = haar_pure_state(n, rng);
    return channel_fidelity(psi.amplitudes(), n, fs, rho);
  });
}

InvariantAverages mc_invariant_averages(std::uint64_t samples, std::uint64_t seed, McOptions opts) {
  check_samples(samples);
  const auto est = estimate_means<5>(samples, seed, opts, [&](std::uint64_t index) {
    RandomStream rng(seed, index, StreamDomain::kInvariants);
    const PureState psi3 = haar_pure_state(3, rng);
    const PureState psi2 = haar_pure_state(2, rng);
    const InvariantSet j = invariants_from_state(psi3);
    const double c = concurrence_pure_2q(psi2);
    return std::array<double, 5>{j.j1, j.j2, j.j3, j.j4, c * c};
  });
  return {est[0], est[1], est[2], est[3], est[4]};
}

}  // namespace qstfid
