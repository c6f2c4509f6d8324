#include "qstfid/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qstfid/errors.hpp"

namespace qstfid {
namespace {

// sigma_y (x) sigma_y in the computational basis.
Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

// Wootters concurrence from any ensemble rho = sum_k w_k w_k^dagger, the
// columns of `ensemble` being the unnormalised w_k. The singular values of
// T = W^dagger Y conj(W) are the mu_i.
double concurrence_from_ensemble(const Eigen::MatrixXcd& ensemble) {
  const Eigen::MatrixXcd t = ensemble.adjoint() * spin_flip() * ensemble.conjugate();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  Eigen::VectorXd mu = svd.singularValues();
  std::vector<double> sorted(mu.data(), mu.data() + mu.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double c = sorted.front();
  for (std::size_t k = 1; k < sorted.size(); ++k) c -= sorted[k];
  return std::clamp(c, 0.0, 1.0);
}

void require_qubits(const PureState& psi, int n, const char* what) {
  if (psi.n_qubits() != n) throw ShapeError(std::string(what) + ": expected a " + std::to_string(n) + "-qubit state");
}

// Concurrence of the marginal on the two qubits other than `traced` (1-based)
// of a 3-qubit pure state, using the slices <c|_traced psi as the ensemble.
double pair_concurrence(const PureState& psi, int traced) {
  const std::size_t mask = std::size_t{1} << (3 - traced);
  Eigen::MatrixXcd ensemble(4, 2);
  for (int c = 0; c < 2; ++c) {
    int row = 0;
    for (std::size_t idx = 0; idx < 8; ++idx) {
      if (((idx & mask) != 0) != (c == 1)) continue;
      ensemble(row++, c) = psi[idx];
    }
  }
  return concurrence_from_ensemble(ensemble);
}

}  // namespace

CanonicalState CanonicalState::make(const std::array<double, 5>& lambda, double phi) {
  double norm_sq = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError("canonical coefficients must be finite and >= 0");
    norm_sq += l * l;
  }
  if (std::abs(norm_sq - 1.0) > kStateTolerance) throw DomainError("canonical coefficients are not normalised");
  if (!(phi >= 0.0 && phi <= std::numbers::pi)) throw DomainError("canonical phase must lie in [0, pi]");
  return CanonicalState{lambda, phi};
}

PureState schmidt_state_2q(double s) {
  if (!(s >= -1.0 && s <= 1.0)) throw DomainError("Schmidt parameter s must lie in [-1, 1]");
  return make_pure_state({std::sqrt((1.0 + s) / 2.0), 0.0, 0.0, std::sqrt((1.0 - s) / 2.0)});
}

double concurrence_pure_2q(const PureState& psi) {
  require_qubits(psi, 2, "concurrence_pure_2q");
  return std::min(1.0, 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]));
}

double concurrence_mixed_2q(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw ShapeError("concurrence_mixed_2q: expected a two-qubit density matrix");
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
  const Eigen::Vector4d& p = solver.eigenvalues();
  if (p.minCoeff() < -kMonotoneTolerance) throw DomainError("concurrence_mixed_2q: matrix is not positive");
  // Eigenvalues at round-off level are exact zeros of rank-deficient inputs;
  // keeping their square roots (~1e-8) would pollute the mu_i.
  Eigen::MatrixXcd ensemble(4, 4);
  for (int k = 0; k < 4; ++k) {
    const double weight = p(k) > 1e-14 ? std::sqrt(p(k)) : 0.0;
    ensemble.col(k) = weight * solver.eigenvectors().col(k);
  }
  return concurrence_from_ensemble(ensemble);
}

double one_tangle(const PureState& psi, int cut) {
  require_qubits(psi, 3, "one_tangle");
  if (cut < 1 || cut > 3) throw IndexError("one_tangle: cut must be 1, 2 or 3");
  const DensityMatrix reduced = partial_trace(density_from_pure(psi), {cut});
  const double det = reduced(0, 0).real() * reduced(1, 1).real() - std::norm(reduced(0, 1));
  return std::clamp(4.0 * det, 0.0, 1.0);
}

double three_tangle_sq(const PureState& psi) {
  require_qubits(psi, 3, "three_tangle_sq");
  const double c_ab = pair_concurrence(psi, 3);
  const double c_ac = pair_concurrence(psi, 2);
  const double residual = one_tangle(psi, 1) - c_ab * c_ab - c_ac * c_ac;
  if (residual < -kMonotoneTolerance) throw DomainError("monogamy residual is negative beyond round-off");
  return std::clamp(residual, 0.0, 1.0);
}

InvariantSet invariants_from_canonical(const CanonicalState& c) {
  const auto& l = c.lambda;
  const double l0sq = l[0] * l[0];
  InvariantSet j;
  j.j1 = std::norm(l[1] * l[4] * std::polar(1.0, c.phi) - l[2] * l[3]);
  j.j2 = l0sq * l[2] * l[2];
  j.j3 = l0sq * l[3] * l[3];
  j.j4 = l0sq * l[4] * l[4];
  j.j5 = l0sq * (j.j1 + l[2] * l[2] * l[3] * l[3] - l[1] * l[1] * l[4] * l[4]);
  return j;
}

PureState canonical_to_state(const CanonicalState& c) {
  const auto& l = c.lambda;
  std::vector<Complex> amps(8);
  amps[0b000] = l[0];
  amps[0b100] = l[1] * std::polar(1.0, c.phi);
  amps[0b101] = l[2];
  amps[0b110] = l[3];
  amps[0b111] = l[4];
  return make_pure_state(std::move(amps));
}

double gme_concurrence(const InvariantSet& j) {
  return 4.0 * (std::min({j.j2 + j.j3, j.j1 + j.j3, j.j1 + j.j2}) + j.j4);
}

MeasureSet measures_from_state(const PureState& psi) {
  require_qubits(psi, 3, "measures_from_state");
  MeasureSet m;
  m.c_ab = pair_concurrence(psi, 3);
  m.c_ac = pair_concurrence(psi, 2);
  m.c_bc = pair_concurrence(psi, 1);
  const double residual = one_tangle(psi, 1) - m.c_ab * m.c_ab - m.c_ac * m.c_ac;
  if (residual < -kMonotoneTolerance) throw DomainError("monogamy residual is negative beyond round-off");
  m.tau3_sq = std::clamp(residual, 0.0, 1.0);
  InvariantSet j;
  j.j1 = m.c_bc * m.c_bc / 4.0;
  j.j2 = m.c_ac * m.c_ac / 4.0;
  j.j3 = m.c_ab * m.c_ab / 4.0;
  j.j4 = m.tau3_sq / 4.0;
  m.c_gme = std::min(1.0, gme_concurrence(j));
  return m;
}

InvariantSet invariants_from_state(const PureState& psi) {
  const MeasureSet m = measures_from_state(psi);
  InvariantSet j;
  // Index convention: J_i pairs with the concurrence of the complementary pair.
  const std::array<double, 3> pair_c{m.c_bc, m.c_ac, m.c_ab};
  static_assert(kInvariantPair[0] == std::array<int, 2>{2, 3});
  j.j1 = pair_c[0] * pair_c[0] / 4.0;
  j.j2 = pair_c[1] * pair_c[1] / 4.0;
  j.j3 = pair_c[2] * pair_c[2] / 4.0;
  j.j4 = m.tau3_sq / 4.0;
  return j;
}

}  // namespace qstfid
