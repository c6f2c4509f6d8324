#include "qstfid/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "qstfid/errors.hpp"
#include "qstfid/kernels/kernels.hpp"

namespace qstfid {

TransitionAmplitude::TransitionAmplitude(double magnitude, double phase)
    : magnitude_(magnitude), phase_(phase), value_(std::polar(magnitude, phase)) {}

TransitionAmplitude TransitionAmplitude::polar(double magnitude, double phase) {
  if (!std::isfinite(magnitude) || !std::isfinite(phase)) throw DomainError("transition amplitude must be finite");
  if (magnitude < 0.0 || magnitude > 1.0) {
    throw DomainError("|f| = " + std::to_string(magnitude) + " is outside [0, 1]");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(phase, two_pi);
  if (reduced < 0.0) reduced += two_pi;
  if (reduced >= two_pi) reduced = 0.0;
  return TransitionAmplitude(magnitude, reduced);
}

TransitionAmplitude TransitionAmplitude::from_complex(Complex f) {
  double magnitude = std::abs(f);
  if (magnitude > 1.0 && magnitude <= 1.0 + kAmplitudeClamp) magnitude = 1.0;
  const double phase = magnitude == 0.0 ? 0.0 : std::arg(f);
  return polar(magnitude, phase);
}

SingleQubitMap SingleQubitMap::identity() {
  Matrix m{};
  for (int k = 0; k < 4; ++k) m[static_cast<std::size_t>(k * 5)] = 1.0;
  return SingleQubitMap(m);
}

std::array<Complex, 4> SingleQubitMap::apply(const std::array<Complex, 4>& rho) const {
  std::array<Complex, 4> out{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) out[r] += m_[r * 4 + c] * rho[c];
  }
  return out;
}

SingleQubitMap single_qubit_superoperator(TransitionAmplitude f) {
  const double p = f.magnitude() * f.magnitude();
  SingleQubitMap::Matrix m{};
  m[0] = 1.0;
  m[3] = 1.0 - p;
  m[5] = f.value();
  m[10] = std::conj(f.value());
  m[15] = p;
  return SingleQubitMap::from_matrix(m);
}

namespace {

Eigen::Matrix4cd choi_matrix(const SingleQubitMap& map) {
  // Phi(|a><b|)_{cd} = S[2c+d][2a+b]  ->  C[(a,c),(b,d)].
  Eigen::Matrix4cd choi;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) choi(2 * a + c, 2 * b + d) = map(2 * c + d, 2 * a + b);
      }
    }
  }
  return choi;
}

}  // namespace

std::array<double, 4> choi_eigenvalues(const SingleQubitMap& map) {
  const Eigen::Matrix4cd choi = choi_matrix(map);
  const Eigen::Matrix4cd herm = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
  return out;
}

bool is_cptp(const SingleQubitMap& map) {
  constexpr double tol = 1e-10;
  // Tr out = rho00' + rho11' must equal rho00 + rho11 for every input.
  constexpr std::array<double, 4> trace_row{1.0, 0.0, 0.0, 1.0};
  for (int c = 0; c < 4; ++c) {
    if (std::abs(map(0, c) + map(3, c) - trace_row[static_cast<std::size_t>(c)]) > tol) return false;
  }
  const Eigen::Matrix4cd choi = choi_matrix(map);
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return choi_eigenvalues(map)[0] >= -tol;
}

DensityMatrix apply_parallel_channels(const DensityMatrix& rho, std::span<const TransitionAmplitude> fs) {
  const int n = rho.n_qubits();
  if (fs.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("apply_parallel_channels: " + std::to_string(fs.size()) + " amplitudes for " +
                     std::to_string(n) + " qubits");
  }
  std::vector<Complex> buffer(rho.entries().begin(), rho.entries().end());
  for (int q = 1; q <= n; ++q) kernels::apply_qubit_channel(buffer, n, q, fs[static_cast<std::size_t>(q - 1)].value());
  return DensityMatrix(n, std::move(buffer));
}

DensityMatrix apply_parallel_channels(const DensityMatrix& rho, TransitionAmplitude f) {
  const std::vector<TransitionAmplitude> fs(static_cast<std::size_t>(rho.n_qubits()), f);
  return apply_parallel_channels(rho, fs);
}

void ChainSpec::validate() const {
  if (length < 1) throw DomainError("chain length must be positive");
  if (couplings.size() != static_cast<std::size_t>(length - 1)) {
    throw ShapeError("chain of length " + std::to_string(length) + " needs " + std::to_string(length - 1) +
                     " couplings");
  }
  if (fields.size() != static_cast<std::size_t>(length)) {
    throw ShapeError("chain of length " + std::to_string(length) + " needs " + std::to_string(length) + " fields");
  }
  for (double j : couplings) {
    if (!(j > 0.0) || !std::isfinite(j)) throw DomainError("chain couplings must be strictly positive");
  }
  for (double h : fields) {
    if (!std::isfinite(h)) throw DomainError("chain fields must be finite");
  }
}

TransitionAmplitude chain_transition_amplitude(const ChainSpec& spec, int sender, int receiver, double t) {
  spec.validate();
  const int n = spec.length;
  if (sender < 1 || sender > n || receiver < 1 || receiver > n) {
    throw IndexError("chain site index out of range");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and non-negative");

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = 2.0 * spec.fields[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = 2.0 * spec.couplings[static_cast<std::size_t>(i)];
    h(i + 1, i) = h(i, i + 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  const Eigen::VectorXd& energies = solver.eigenvalues();
  const Eigen::MatrixXd& modes = solver.eigenvectors();

  Complex f = 0.0;
  for (int k = 0; k < n; ++k) {
    f += modes(receiver - 1, k) * modes(sender - 1, k) * std::polar(1.0, -energies(k) * t);
  }
  const double magnitude = std::abs(f);
  if (magnitude > 1.0 + kAmplitudeClamp) throw DomainError("chain propagator is not unitary (|f| > 1)");
  return TransitionAmplitude::from_complex(f);
}

}  // namespace qstfid
