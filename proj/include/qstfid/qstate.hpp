#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qstfid {

using Complex = std::complex<double>;

/// Absolute tolerance on normalisation, Hermiticity and trace.
inline constexpr double kStateTolerance = 1e-12;
/// Smallest eigenvalue accepted as "non-negative" for a density matrix.
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr int kDefaultMaxQubits = 8;

/// Dense-representation cap. Defaults to 8 qubits; the environment variable
/// QSTFIDLAB_MAX_QUBITS overrides it (read once per process).
int max_qubits();

/// Throws ShapeError unless 1 <= n <= max_qubits().
void check_qubit_count(int n_qubits);

/// Normalised pure state over 2^n basis states. Qubit 1 is the most significant
/// bit of the basis index, so amplitude k of |i_1 i_2 ... i_n> has
/// k = i_1 2^(n-1) + ... + i_n.
class PureState {
 public:
  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  friend PureState make_pure_state(std::vector<Complex> amplitudes);
  PureState(int n_qubits, std::vector<Complex> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Normalises the amplitudes. Throws ShapeError if the length is not a power of
/// two (or exceeds the qubit cap) and DegenerateInputError for a zero vector.
PureState make_pure_state(std::vector<Complex> amplitudes);

PureState basis_state(int n_qubits, std::size_t index);

/// |a> (x) |b>, with a's qubits first.
PureState tensor_product(const PureState& a, const PureState& b);

/// Hermitian, unit-trace operator stored row-major.
class DensityMatrix {
 public:
  /// Checks shape, Hermiticity and trace (both within kStateTolerance).
  DensityMatrix(int n_qubits, std::vector<Complex> entries);

  /// As the constructor, and additionally requires every eigenvalue to be
  /// >= -kPsdTolerance.
  static DensityMatrix from_entries(int n_qubits, std::vector<Complex> entries);

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return dim_; }
  std::span<const Complex> entries() const { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

  Complex trace() const;
  /// Ascending eigenvalues.
  std::vector<double> eigenvalues() const;

 private:
  int n_qubits_;
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// |psi><psi|, built conjugate-symmetrically so the result is exactly Hermitian.
DensityMatrix density_from_pure(const PureState& psi);

/// Reduced state on `keep` (1-based qubit labels, any order, no duplicates).
/// The kept qubits retain their relative big-endian order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Tr rho^2.
double purity(const DensityMatrix& rho);

}  // namespace qstfid
