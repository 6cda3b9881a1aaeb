// AVX-512 variants; same lane layout as the AVX2 file but four amplitudes per
// zmm register. AVX-512 has no addsub, so the complex product leans on
// fmaddsub throughout. Compiled with -mavx512f -mavx512dq for this file only.

#include <immintrin.h>

#include "qdsim/kernels.hpp"

#include "tail.hpp"

namespace qdsim::kernels {
namespace {

inline __m512d cmul_bcast512(__m512d x, __m512d re, __m512d im) {
  const __m512d sw = _mm512_permute_pd(x, 0x55);
  return _mm512_fmaddsub_pd(x, re, _mm512_mul_pd(sw, im));
}

void apply_matrix_rows_avx512(const cplx* m, int dim, cplx* const* rows,
                              std::size_t run, cplx* scratch) {
  const auto* md = reinterpret_cast<const double*>(m);
  auto* sc = reinterpret_cast<double*>(scratch);
  std::size_t s = 0;
  // 8 amplitudes per step, 2 vectors per row.
  for (; s + 8 <= run; s += 8) {
    for (int j = 0; j < dim; ++j) {
      const auto* src = reinterpret_cast<const double*>(rows[j] + s);
      _mm512_storeu_pd(sc + 16 * j, _mm512_loadu_pd(src));
      _mm512_storeu_pd(sc + 16 * j + 8, _mm512_loadu_pd(src + 8));
    }
    for (int o = 0; o < dim; ++o) {
      __m512d acc0 = _mm512_setzero_pd();
      __m512d acc1 = _mm512_setzero_pd();
      const double* mrow = md + 2 * static_cast<std::size_t>(o) * dim;
      for (int j = 0; j < dim; ++j) {
        const __m512d re = _mm512_set1_pd(mrow[2 * j]);
        const __m512d im = _mm512_set1_pd(mrow[2 * j + 1]);
        acc0 = _mm512_add_pd(acc0, cmul_bcast512(_mm512_loadu_pd(sc + 16 * j), re, im));
        acc1 = _mm512_add_pd(acc1, cmul_bcast512(_mm512_loadu_pd(sc + 16 * j + 8), re, im));
      }
      auto* dst = reinterpret_cast<double*>(rows[o] + s);
      _mm512_storeu_pd(dst, acc0);
      _mm512_storeu_pd(dst + 8, acc1);
    }
  }
  if (s < run) detail::apply_rows_tail(m, dim, rows, s, run, scratch);
}

cplx dot_conjugate_avx512(const cplx* a, const cplx* b, std::size_t n) {
  __m512d acc = _mm512_setzero_pd();
  const auto* ad = reinterpret_cast<const double*>(a);
  const auto* bd = reinterpret_cast<const double*>(b);
  const __m512d conj_mask =
      _mm512_setr_pd(0.0, -0.0, 0.0, -0.0, 0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m512d av =
        _mm512_xor_pd(_mm512_loadu_pd(ad + 2 * i), conj_mask);
    const __m512d bv = _mm512_loadu_pd(bd + 2 * i);
    const __m512d re = _mm512_movedup_pd(av);
    const __m512d im = _mm512_permute_pd(av, 0xFF);
    const __m512d sw = _mm512_permute_pd(bv, 0x55);
    acc = _mm512_add_pd(acc, _mm512_fmaddsub_pd(re, bv, _mm512_mul_pd(im, sw)));
  }
  alignas(64) double lanes[8];
  _mm512_store_pd(lanes, acc);
  double re = ((lanes[0] + lanes[2]) + (lanes[4] + lanes[6]));
  double im = ((lanes[1] + lanes[3]) + (lanes[5] + lanes[7]));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_squared_avx512(const cplx* a, std::size_t n) {
  __m512d acc = _mm512_setzero_pd();
  const auto* ad = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m512d av = _mm512_loadu_pd(ad + 2 * i);
    acc = _mm512_fmadd_pd(av, av, acc);
  }
  alignas(64) double lanes[8];
  _mm512_store_pd(lanes, acc);
  double out = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) +
               ((lanes[4] + lanes[5]) + (lanes[6] + lanes[7]));
  for (; i < n; ++i) {
    out += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return out;
}

void scale_avx512(cplx* a, cplx factor, std::size_t n) {
  auto* ad = reinterpret_cast<double*>(a);
  const __m512d re = _mm512_set1_pd(factor.real());
  const __m512d im = _mm512_set1_pd(factor.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m512d av = _mm512_loadu_pd(ad + 2 * i);
    const __m512d sw = _mm512_permute_pd(av, 0x55);
    _mm512_storeu_pd(ad + 2 * i,
                     _mm512_fmaddsub_pd(av, re, _mm512_mul_pd(sw, im)));
  }
  for (; i < n; ++i) a[i] *= factor;
}

}  // namespace

const Kernels& avx512_kernels() {
  static const Kernels k{"avx512", apply_matrix_rows_avx512,
                         dot_conjugate_avx512, norm_squared_avx512,
                         scale_avx512};
  return k;
}

}  // namespace qdsim::kernels
