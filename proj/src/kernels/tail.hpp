#pragma once

#include <cstddef>

#include "qdsim/common.hpp"

// Shared scalar remainder loop. Every variant falls back to this for the
// trailing amplitudes a vector step cannot cover; the scalar kernel is this
// loop over the whole run.
namespace qdsim::kernels::detail {

inline void apply_rows_tail(const cplx* m, int dim, cplx* const* rows,
                            std::size_t s0, std::size_t s1, cplx* scratch) {
  for (std::size_t s = s0; s < s1; ++s) {
    for (int j = 0; j < dim; ++j) scratch[j] = rows[j][s];
    for (int o = 0; o < dim; ++o) {
      cplx acc{0.0, 0.0};
      const cplx* mrow = m + static_cast<std::size_t>(o) * dim;
      for (int j = 0; j < dim; ++j) acc += mrow[j] * scratch[j];
      rows[o][s] = acc;
    }
  }
}

}  // namespace qdsim::kernels::detail
