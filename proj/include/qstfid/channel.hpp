#pragma once

#include <array>
#include <span>
#include <vector>

#include "qstfid/qstate.hpp"

namespace qstfid {

/// Overshoot of |f| above 1 that is treated as round-off and clamped.
inline constexpr double kAmplitudeClamp = 1e-10;

/// Complex transition amplitude f = |f| e^{i phase} of one sender->receiver
/// channel. |f| <= 1 is what makes the damping map completely positive.
class TransitionAmplitude {
 public:
  /// Throws DomainError unless magnitude is in [0, 1]. The phase is reduced
  /// to [0, 2 pi).
  static TransitionAmplitude polar(double magnitude, double phase = 0.0);
  static TransitionAmplitude from_complex(Complex f);

  double magnitude() const { return magnitude_; }
  double phase() const { return phase_; }
  Complex value() const { return value_; }

 private:
  TransitionAmplitude(double magnitude, double phase);

  double magnitude_;
  double phase_;
  Complex value_;
};

/// 4x4 superoperator acting on the column vector (rho00, rho01, rho10, rho11).
class SingleQubitMap {
 public:
  using Matrix = std::array<Complex, 16>;  // row-major

  /// Wraps an arbitrary matrix without any physical validation.
  static SingleQubitMap from_matrix(const Matrix& m) { return SingleQubitMap(m); }
  static SingleQubitMap identity();

  Complex operator()(int row, int col) const { return m_[static_cast<std::size_t>(row * 4 + col)]; }
  const Matrix& matrix() const { return m_; }

  /// Applies the map to a 2x2 row-major operator.
  std::array<Complex, 4> apply(const std::array<Complex, 4>& rho) const;

 private:
  explicit SingleQubitMap(const Matrix& m) : m_(m) {}
  Matrix m_;
};

/// The U(1)-symmetric amplitude-damping superoperator
///
///   | 1  0  0   1-|f|^2 |
///   | 0  f  0   0       |
///   | 0  0  f*  0       |
///   | 0  0  0   |f|^2   |
SingleQubitMap single_qubit_superoperator(TransitionAmplitude f);

/// Eigenvalues (ascending) of the Choi matrix sum_ab |a><b| (x) Phi(|a><b|).
std::array<double, 4> choi_eigenvalues(const SingleQubitMap& map);

/// Trace preserving within 1e-10, Hermitian Choi matrix, and Choi spectrum
/// >= -1e-10.
bool is_cptp(const SingleQubitMap& map);

/// rho_R = (Phi_1 (x) ... (x) Phi_n)(rho), applied qubit by qubit; fs[k] drives
/// qubit k+1. Throws ShapeError if fs.size() != rho.n_qubits().
DensityMatrix apply_parallel_channels(const DensityMatrix& rho, std::span<const TransitionAmplitude> fs);
/// Same f on every qubit.
DensityMatrix apply_parallel_channels(const DensityMatrix& rho, TransitionAmplitude f);

/// Spin chain restricted to its single-excitation sector.
struct ChainSpec {
  int length = 1;
  std::vector<double> couplings;  // J_1 .. J_{N-1}, strictly positive
  std::vector<double> fields;     // h_1 .. h_N

  /// Throws DomainError / ShapeError on inconsistent data.
  void validate() const;
};

/// f = <receiver| exp(-i H t) |sender> with H the N x N single-excitation
/// block: off-diagonal 2 J_i, diagonal 2 h_i (energies measured from the fully
/// polarised vacuum). Sites are 1-based. |f| overshooting 1 by at most 1e-10
/// is clamped.
TransitionAmplitude chain_transition_amplitude(const ChainSpec& spec, int sender, int receiver, double t);

}  // namespace qstfid
