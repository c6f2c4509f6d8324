#include <atomic>
#include <cstdlib>
#include <string>

#include "qstfid/errors.hpp"
#include "qstfid/kernels/variants.hpp"

namespace qstfid::kernels {
namespace {

constexpr KernelTable kScalarTable{
    scalar::apply_qubit_channel,
    scalar::apply_qubit_unitary,
    scalar::outer_product,
    scalar::expectation,
};

#ifdef QSTFID_HAVE_AVX2
constexpr KernelTable kAvx2Table{
    avx2::apply_qubit_channel,
    avx2::apply_qubit_unitary,
    avx2::outer_product,
    avx2::expectation,
};
#endif

bool cpu_has_avx2() {
#if defined(QSTFID_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (const char* env = std::getenv("QSTFIDLAB_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> current{&table(initial_isa())};
  return current;
}

void check_square(std::size_t psi_size, std::size_t rho_size) {
  if (psi_size < 2 || psi_size * psi_size != rho_size) {
    throw ShapeError("kernel: operator size does not match vector dimension");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

const KernelTable& table(Isa isa) {
#ifdef QSTFID_HAVE_AVX2
  if (isa == Isa::kAvx2) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

Isa active_isa() { return active_table().load() == &kScalarTable ? Isa::kScalar : Isa::kAvx2; }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) {
    throw DomainError("AVX2 kernels are not available on this machine/build");
  }
  active_table().store(&table(isa));
}

void apply_qubit_channel(std::span<Complex> rho, int n_qubits, int qubit, Complex f) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (rho.size() != dim * dim) throw ShapeError("apply_qubit_channel: buffer is not 2^n x 2^n");
  if (qubit < 1 || qubit > n_qubits) throw IndexError("apply_qubit_channel: qubit out of range");
  active_table().load()->apply_qubit_channel(rho.data(), dim, qubit_mask(n_qubits, qubit), f);
}

void apply_qubit_unitary(std::span<Complex> psi, int n_qubits, int qubit, const Mat2& u) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (psi.size() != dim) throw ShapeError("apply_qubit_unitary: buffer is not 2^n long");
  if (qubit < 1 || qubit > n_qubits) throw IndexError("apply_qubit_unitary: qubit out of range");
  active_table().load()->apply_qubit_unitary(psi.data(), dim, qubit_mask(n_qubits, qubit), u);
}

void outer_product(std::span<const Complex> psi, std::span<Complex> rho) {
  check_square(psi.size(), rho.size());
  active_table().load()->outer_product(psi.data(), psi.size(), rho.data());
}

double expectation(std::span<const Complex> psi, std::span<const Complex> rho) {
  check_square(psi.size(), rho.size());
  return active_table().load()->expectation(psi.data(), psi.size(), rho.data());
}

}  // namespace qstfid::kernels
