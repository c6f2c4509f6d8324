// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma and is
// only entered after the dispatcher has confirmed CPU support.
//
// A __m256d holds two complex doubles as [re0, im0, re1, im1]. All kernels
// require dim >= 2, which holds for every state with at least one qubit.

#include <immintrin.h>

#include "qstfid/kernels/variants.hpp"

namespace qstfid::kernels::avx2 {
namespace {

inline __m256d load(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d broadcast(Complex z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }
inline __m256d pair(Complex lo, Complex hi) {
  return _mm256_setr_pd(lo.real(), lo.imag(), hi.real(), hi.imag());
}

// Lane-wise complex product.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

inline __m256d conj(__m256d a) {
  const __m256d sign = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  return _mm256_xor_pd(a, sign);
}

}  // namespace

void apply_qubit_channel(Complex* rho, std::size_t dim, std::size_t mask, Complex f) {
  const double p = std::norm(f);
  const double decay = 1.0 - p;
  const __m256d v_decay = _mm256_set1_pd(decay);

  if (mask == 1) {
    // Adjacent columns j0, j1 share a register.
    const __m256d row0_factor = pair(Complex{1.0, 0.0}, f);
    const __m256d row1_factor = pair(std::conj(f), Complex{p, 0.0});
    for (std::size_t i0 = 0; i0 < dim; i0 += 2) {
      Complex* r0 = rho + i0 * dim;
      Complex* r1 = r0 + dim;
      for (std::size_t j = 0; j < dim; j += 2) {
        const __m256d v0 = load(r0 + j);
        const __m256d v1 = load(r1 + j);
        const __m256d rho11_low = _mm256_permute2f128_pd(v1, v1, 0x81);
        store(r0 + j, _mm256_fmadd_pd(v_decay, rho11_low, cmul(v0, row0_factor)));
        store(r1 + j, cmul(v1, row1_factor));
      }
    }
    return;
  }

  const __m256d v_f = broadcast(f);
  const __m256d v_fc = broadcast(std::conj(f));
  const __m256d v_p = _mm256_set1_pd(p);
  for (std::size_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    Complex* r0 = rho + i0 * dim;
    Complex* r1 = rho + (i0 | mask) * dim;
    for (std::size_t jb = 0; jb < dim; jb += 2 * mask) {
      for (std::size_t k = 0; k < mask; k += 2) {
        const std::size_t j0 = jb + k;
        const std::size_t j1 = j0 + mask;
        const __m256d a11 = load(r1 + j1);
        store(r0 + j0, _mm256_fmadd_pd(v_decay, a11, load(r0 + j0)));
        store(r0 + j1, cmul(load(r0 + j1), v_f));
        store(r1 + j0, cmul(load(r1 + j0), v_fc));
        store(r1 + j1, _mm256_mul_pd(v_p, a11));
      }
    }
  }
}

void apply_qubit_unitary(Complex* psi, std::size_t dim, std::size_t mask, const Mat2& u) {
  if (mask == 1) {
    const __m256d col0 = pair(u[0], u[2]);
    const __m256d col1 = pair(u[1], u[3]);
    for (std::size_t i = 0; i < dim; i += 2) {
      const __m256d v = load(psi + i);
      const __m256d a = _mm256_permute2f128_pd(v, v, 0x00);
      const __m256d b = _mm256_permute2f128_pd(v, v, 0x11);
      store(psi + i, _mm256_add_pd(cmul(a, col0), cmul(b, col1)));
    }
    return;
  }

  const __m256d u00 = broadcast(u[0]);
  const __m256d u01 = broadcast(u[1]);
  const __m256d u10 = broadcast(u[2]);
  const __m256d u11 = broadcast(u[3]);
  for (std::size_t base = 0; base < dim; base += 2 * mask) {
    for (std::size_t k = 0; k < mask; k += 2) {
      Complex* p0 = psi + base + k;
      Complex* p1 = p0 + mask;
      const __m256d a = load(p0);
      const __m256d b = load(p1);
      store(p0, _mm256_add_pd(cmul(a, u00), cmul(b, u01)));
      store(p1, _mm256_add_pd(cmul(a, u10), cmul(b, u11)));
    }
  }
}

void outer_product(const Complex* psi, std::size_t dim, Complex* rho) {
  for (std::size_t i = 0; i < dim; ++i) {
    const __m256d a = broadcast(psi[i]);
    Complex* row = rho + i * dim;
    for (std::size_t j = 0; j < dim; j += 2) store(row + j, cmul(a, conj(load(psi + j))));
  }
}

double expectation(const Complex* psi, std::size_t dim, const Complex* rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const Complex* row = rho + i * dim;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; j += 2) acc = _mm256_add_pd(acc, cmul(load(row + j), load(psi + j)));
    const __m128d w = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    total += psi[i].real() * _mm_cvtsd_f64(w) + psi[i].imag() * _mm_cvtsd_f64(_mm_unpackhi_pd(w, w));
  }
  return total;
}

}  // namespace qstfid::kernels::avx2
