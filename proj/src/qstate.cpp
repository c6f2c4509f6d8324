#include "qstfid/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qstfid/errors.hpp"

namespace qstfid {
namespace {

int read_max_qubits() {
  if (const char* env = std::getenv("QSTFIDLAB_MAX_QUBITS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1 && value <= 30) return static_cast<int>(value);
  }
  return kDefaultMaxQubits;
}

// Spreads the bits of `value` onto the basis-index positions in `masks`
// (masks[0] receives the most significant bit of value).
std::size_t scatter(std::size_t value, const std::vector<std::size_t>& masks) {
  std::size_t out = 0;
  const std::size_t width = masks.size();
  for (std::size_t b = 0; b < width; ++b) {
    if (value & (std::size_t{1} << (width - 1 - b))) out |= masks[b];
  }
  return out;
}

}  // namespace

int max_qubits() {
  static const int cap = read_max_qubits();
  return cap;
}

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1) throw ShapeError("state needs at least one qubit");
  if (n_qubits > max_qubits()) {
    throw ShapeError("qubit count " + std::to_string(n_qubits) + " exceeds the dense cap of " +
                     std::to_string(max_qubits()) + " (set QSTFIDLAB_MAX_QUBITS to raise it)");
  }
}

PureState make_pure_state(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw ShapeError("amplitude count " + std::to_string(dim) + " is not a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  check_qubit_count(n);

  double norm_sq = 0.0;
  for (const Complex& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DegenerateInputError("amplitudes must be finite");
    }
    norm_sq += std::norm(a);
  }
  if (!(norm_sq > 0.0)) throw DegenerateInputError("zero vector cannot be normalised");
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (Complex& a : amplitudes) a *= inv;
  return PureState(n, std::move(amplitudes));
}

PureState basis_state(int n_qubits, std::size_t index) {
  check_qubit_count(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw IndexError("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return make_pure_state(std::move(amps));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<Complex> amps;
  amps.reserve(a.dimension() * b.dimension());
  for (const Complex& x : a.amplitudes()) {
    for (const Complex& y : b.amplitudes()) amps.push_back(x * y);
  }
  return make_pure_state(std::move(amps));
}

DensityMatrix::DensityMatrix(int n_qubits, std::vector<Complex> entries)
    : n_qubits_(n_qubits), dim_(0), entries_(std::move(entries)) {
  check_qubit_count(n_qubits);
  dim_ = std::size_t{1} << n_qubits;
  if (entries_.size() != dim_ * dim_) {
    throw ShapeError("density matrix needs " + std::to_string(dim_ * dim_) + " entries, got " +
                     std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs(entries_[i * dim_ + j] - std::conj(entries_[j * dim_ + i])) > kStateTolerance) {
        throw DomainError("density matrix is not Hermitian");
      }
    }
  }
  if (std::abs(trace() - 1.0) > kStateTolerance) throw DomainError("density matrix trace is not 1");
}

DensityMatrix DensityMatrix::from_entries(int n_qubits, std::vector<Complex> entries) {
  DensityMatrix rho(n_qubits, std::move(entries));
  const std::vector<double> eig = rho.eigenvalues();
  if (eig.front() < -kPsdTolerance) throw DomainError("density matrix has a negative eigenvalue");
  return rho;
}

Complex DensityMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

std::vector<double> DensityMatrix::eigenvalues() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = entries_[static_cast<std::size_t>(i * d + j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

DensityMatrix density_from_pure(const PureState& psi) {
  const std::size_t dim = psi.dimension();
  std::vector<Complex> entries(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    entries[i * dim + i] = std::norm(psi[i]);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const Complex v = psi[i] * std::conj(psi[j]);
      entries[i * dim + j] = v;
      entries[j * dim + i] = std::conj(v);
    }
  }
  return DensityMatrix(psi.n_qubits(), std::move(entries));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw IndexError("partial_trace: keep set is empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw IndexError("partial_trace: duplicate qubit in keep set");
  }
  if (kept.front() < 1 || kept.back() > n) throw IndexError("partial_trace: qubit label out of range");

  std::vector<std::size_t> kept_masks;
  std::vector<std::size_t> traced_masks;
  for (int q = 1; q <= n; ++q) {
    const std::size_t mask = std::size_t{1} << (n - q);
    if (std::binary_search(kept.begin(), kept.end(), q)) {
      kept_masks.push_back(mask);
    } else {
      traced_masks.push_back(mask);
    }
  }

  const std::size_t kd = std::size_t{1} << kept_masks.size();
  const std::size_t td = std::size_t{1} << traced_masks.size();
  std::vector<std::size_t> kept_index(kd);
  std::vector<std::size_t> traced_index(td);
  for (std::size_t a = 0; a < kd; ++a) kept_index[a] = scatter(a, kept_masks);
  for (std::size_t t = 0; t < td; ++t) traced_index[t] = scatter(t, traced_masks);

  std::vector<Complex> out(kd * kd);
  for (std::size_t a = 0; a < kd; ++a) {
    for (std::size_t b = 0; b < kd; ++b) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < td; ++t) sum += rho(kept_index[a] | traced_index[t], kept_index[b] | traced_index[t]);
      out[a * kd + b] = sum;
    }
  }
  return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  double total = 0.0;
  for (const Complex& z : rho.entries()) total += std::norm(z);
  return total;
}

}  // namespace qstfid
