#include "qdsim/kernels.hpp"

#include "tail.hpp"

namespace qdsim::kernels {
namespace {

void apply_matrix_rows_scalar(const cplx* m, int dim, cplx* const* rows,
                              std::size_t run, cplx* scratch) {
  detail::apply_rows_tail(m, dim, rows, 0, run, scratch);
}

cplx dot_conjugate_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm_squared_scalar(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

void scale_scalar(cplx* a, cplx factor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= factor;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", apply_matrix_rows_scalar,
                         dot_conjugate_scalar, norm_squared_scalar,
                         scale_scalar};
  return k;
}

}  // namespace qdsim::kernels
