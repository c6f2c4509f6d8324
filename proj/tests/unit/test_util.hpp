#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qstfid/qstate.hpp"
#include "qstfid/rng.hpp"

namespace testutil {

// Gaussian-vector state; fine for tests, no claim about exact Haar-ness needed.
inline qstfid::PureState random_state(int n, std::uint64_t seed, std::uint64_t index = 0) {
  qstfid::RandomStream rng(seed, index, qstfid::StreamDomain::kTest);
  std::vector<qstfid::Complex> a(std::size_t{1} << n);
  for (auto& z : a) z = rng.complex_normal();
  return qstfid::make_pure_state(std::move(a));
}

inline oracle::Vec to_vec(const qstfid::PureState& psi) {
  return {psi.amplitudes().begin(), psi.amplitudes().end()};
}

inline oracle::M2 random_unitary(std::uint64_t seed, std::uint64_t index) {
  qstfid::RandomStream rng(seed, index, qstfid::StreamDomain::kTest);
  const double a = 2.0 * M_PI * rng.uniform();
  const double b = 2.0 * M_PI * rng.uniform();
  const double c = 2.0 * M_PI * rng.uniform();
  const double t = std::acos(std::sqrt(rng.uniform()));
  using C = oracle::C;
  const C ea = std::polar(1.0, a), eb = std::polar(1.0, b), ec = std::polar(1.0, c);
  return {ea * eb * std::cos(t), ea * ec * std::sin(t), -ea * std::conj(ec) * std::sin(t),
          ea * std::conj(eb) * std::cos(t)};
}

inline qstfid::PureState local_rotate(const qstfid::PureState& psi, std::uint64_t seed) {
  oracle::Vec v = to_vec(psi);
  for (int q = 1; q <= psi.n_qubits(); ++q) v = oracle::apply_local(v, psi.n_qubits(), q, random_unitary(seed, q));
  return qstfid::make_pure_state(std::move(v));
}

}  // namespace testutil
