#pragma once

// Inner-loop kernels on dense row-major buffers. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2+FMA variant. The variant is
// picked once at start-up from cpuid; QSTFIDLAB_SIMD=scalar forces the
// reference path.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "qstfid/qstate.hpp"

namespace qstfid::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Best variant the running CPU supports (and the build contains).
Isa detected_isa();
/// Variant currently used by the dispatching wrappers below.
Isa active_isa();
/// Switches the dispatch table. Throws DomainError if `isa` is unavailable.
/// Not meant to be flipped while other threads are running kernels.
void set_active_isa(Isa isa);

/// Row-major 2x2 matrix {u00, u01, u10, u11}.
using Mat2 = std::array<Complex, 4>;

/// Signature set shared by all variants. `mask` is the bit of the basis index
/// belonging to the target qubit (1 << (n - qubit) for 1-based labels).
struct KernelTable {
  /// In-place U(1) amplitude-damping map on one qubit of a dim x dim density
  /// matrix: rho00 += (1-|f|^2) rho11, rho01 *= f, rho10 *= conj(f), rho11 *= |f|^2.
  void (*apply_qubit_channel)(Complex* rho, std::size_t dim, std::size_t mask, Complex f);
  /// In-place psi <- (u on one qubit) psi.
  void (*apply_qubit_unitary)(Complex* psi, std::size_t dim, std::size_t mask, const Mat2& u);
  /// rho <- |psi><psi|.
  void (*outer_product)(const Complex* psi, std::size_t dim, Complex* rho);
  /// Re <psi|rho|psi>.
  double (*expectation)(const Complex* psi, std::size_t dim, const Complex* rho);
};

const KernelTable& table(Isa isa);

inline std::size_t qubit_mask(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - qubit);
}

// Dispatching wrappers (1-based qubit labels, qubit 1 = most significant bit).
void apply_qubit_channel(std::span<Complex> rho, int n_qubits, int qubit, Complex f);
void apply_qubit_unitary(std::span<Complex> psi, int n_qubits, int qubit, const Mat2& u);
void outer_product(std::span<const Complex> psi, std::span<Complex> rho);
double expectation(std::span<const Complex> psi, std::span<const Complex> rho);

}  // namespace qstfid::kernels
