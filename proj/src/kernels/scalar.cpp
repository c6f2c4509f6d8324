#include "qstfid/kernels/variants.hpp"

namespace qstfid::kernels::scalar {
namespace {

// Plain component arithmetic; std::complex operator* goes through the
// NaN-recovering libgcc path, which is several times slower here.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline Complex mul_conj(Complex a, Complex b) {  // a * conj(b)
  return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}

}  // namespace

void apply_qubit_channel(Complex* rho, std::size_t dim, std::size_t mask, Complex f) {
  const double p = std::norm(f);
  const double decay = 1.0 - p;
  const Complex fc = std::conj(f);
  for (std::size_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    Complex* r0 = rho + i0 * dim;
    Complex* r1 = rho + (i0 | mask) * dim;
    for (std::size_t j0 = 0; j0 < dim; ++j0) {
      if (j0 & mask) continue;
      const std::size_t j1 = j0 | mask;
      const Complex a11 = r1[j1];
      r0[j0] = {r0[j0].real() + decay * a11.real(), r0[j0].imag() + decay * a11.imag()};
      r0[j1] = mul(r0[j1], f);
      r1[j0] = mul(r1[j0], fc);
      r1[j1] = {p * a11.real(), p * a11.imag()};
    }
  }
}

void apply_qubit_unitary(Complex* psi, std::size_t dim, std::size_t mask, const Mat2& u) {
  for (std::size_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    const std::size_t i1 = i0 | mask;
    const Complex a = psi[i0];
    const Complex b = psi[i1];
    psi[i0] = mul(u[0], a) + mul(u[1], b);
    psi[i1] = mul(u[2], a) + mul(u[3], b);
  }
}

void outer_product(const Complex* psi, std::size_t dim, Complex* rho) {
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) rho[i * dim + j] = mul_conj(psi[i], psi[j]);
  }
}

double expectation(const Complex* psi, std::size_t dim, const Complex* rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const Complex* row = rho + i * dim;
    double wr = 0.0;
    double wi = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex t = mul(row[j], psi[j]);
      wr += t.real();
      wi += t.imag();
    }
    total += psi[i].real() * wr + psi[i].imag() * wi;
  }
  return total;
}

}  // namespace qstfid::kernels::scalar
