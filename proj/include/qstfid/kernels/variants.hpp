#pragma once

// Per-ISA kernel entry points. Included by the dispatcher and by the
// equivalence tests; everything else should go through kernels.hpp.

#include "qstfid/kernels/kernels.hpp"

namespace qstfid::kernels::scalar {
void apply_qubit_channel(Complex* rho, std::size_t dim, std::size_t mask, Complex f);
void apply_qubit_unitary(Complex* psi, std::size_t dim, std::size_t mask, const Mat2& u);
void outer_product(const Complex* psi, std::size_t dim, Complex* rho);
double expectation(const Complex* psi, std::size_t dim, const Complex* rho);
}  // namespace qstfid::kernels::scalar

#ifdef QSTFID_HAVE_AVX2
namespace qstfid::kernels::avx2 {
void apply_qubit_channel(Complex* rho, std::size_t dim, std::size_t mask, Complex f);
void apply_qubit_unitary(Complex* psi, std::size_t dim, std::size_t mask, const Mat2& u);
void outer_product(const Complex* psi, std::size_t dim, Complex* rho);
double expectation(const Complex* psi, std::size_t dim, const Complex* rho);
}  // namespace qstfid::kernels::avx2
#endif
