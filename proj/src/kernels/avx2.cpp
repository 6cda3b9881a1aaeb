// AVX2 + FMA variants. Complex doubles are processed as [re, im] lane pairs;
// one __m256d holds two amplitudes. Compiled with -mavx2 -mfma for this file
// only; callers reach it through the dispatch table after a CPU check.

#include <immintrin.h>

#include "qdsim/kernels.hpp"

#include "tail.hpp"

namespace qdsim::kernels {
namespace {

// (xr + i xi) * (mr + i mi) for two packed amplitudes. fmaddsub pairs the
// subtraction into the real lanes and the addition into the imaginary ones.
inline __m256d cmul_bcast(__m256d x, __m256d re, __m256d im) {
  const __m256d sw = _mm256_permute_pd(x, 0x5);  // [xi, xr, ...]
  return _mm256_fmaddsub_pd(x, re, _mm256_mul_pd(sw, im));
}

void apply_matrix_rows_avx2(const cplx* m, int dim, cplx* const* rows,
                            std::size_t run, cplx* scratch) {
  const auto* md = reinterpret_cast<const double*>(m);
  auto* sc = reinterpret_cast<double*>(scratch);
  std::size_t s = 0;
  // 4 amplitudes per step, 2 vectors per row. All inputs are snapshotted
  // into scratch before any output row is written (the rows alias the state).
  for (; s + 4 <= run; s += 4) {
    for (int j = 0; j < dim; ++j) {
      const auto* src = reinterpret_cast<const double*>(rows[j] + s);
      _mm256_storeu_pd(sc + 8 * j, _mm256_loadu_pd(src));
      _mm256_storeu_pd(sc + 8 * j + 4, _mm256_loadu_pd(src + 4));
    }
    for (int o = 0; o < dim; ++o) {
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      const double* mrow = md + 2 * static_cast<std::size_t>(o) * dim;
      for (int j = 0; j < dim; ++j) {
        const __m256d re = _mm256_set1_pd(mrow[2 * j]);
        const __m256d im = _mm256_set1_pd(mrow[2 * j + 1]);
        acc0 = _mm256_add_pd(acc0, cmul_bcast(_mm256_loadu_pd(sc + 8 * j), re, im));
        acc1 = _mm256_add_pd(acc1, cmul_bcast(_mm256_loadu_pd(sc + 8 * j + 4), re, im));
      }
      auto* dst = reinterpret_cast<double*>(rows[o] + s);
      _mm256_storeu_pd(dst, acc0);
      _mm256_storeu_pd(dst + 4, acc1);
    }
  }
  if (s < run) detail::apply_rows_tail(m, dim, rows, s, run, scratch);
}

cplx dot_conjugate_avx2(const cplx* a, const cplx* b, std::size_t n) {
  // conj(a)*b per complex lane pair:
  //   re = ar*br + ai*bi, im = ar*bi - ai*br.
  __m256d acc = _mm256_setzero_pd();
  const auto* ad = reinterpret_cast<const double*>(a);
  const auto* bd = reinterpret_cast<const double*>(b);
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_xor_pd(_mm256_loadu_pd(ad + 2 * i), conj_mask);
    const __m256d bv = _mm256_loadu_pd(bd + 2 * i);
    const __m256d re = _mm256_movedup_pd(av);           // [ar, ar, ...]
    const __m256d im = _mm256_permute_pd(av, 0xF);      // [ai', ai', ...]
    const __m256d sw = _mm256_permute_pd(bv, 0x5);      // [bi, br, ...]
    acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(re, bv, _mm256_mul_pd(im, sw)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_squared_avx2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const auto* ad = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * i);
    acc = _mm256_fmadd_pd(av, av, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double out = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    out += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return out;
}

void scale_avx2(cplx* a, cplx factor, std::size_t n) {
  auto* ad = reinterpret_cast<double*>(a);
  const __m256d re = _mm256_set1_pd(factor.real());
  const __m256d im = _mm256_set1_pd(factor.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * i);
    const __m256d sw = _mm256_permute_pd(av, 0x5);
    _mm256_storeu_pd(ad + 2 * i, _mm256_fmaddsub_pd(av, re, _mm256_mul_pd(sw, im)));
  }
  for (; i < n; ++i) a[i] *= factor;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k{"avx2", apply_matrix_rows_avx2, dot_conjugate_avx2,
                         norm_squared_avx2, scale_avx2};
  return k;
}

}  // namespace qdsim::kernels
