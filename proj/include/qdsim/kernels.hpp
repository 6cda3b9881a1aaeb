#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qdsim/common.hpp"

namespace qdsim::kernels {

// Scratch sizing contract for apply_matrix_rows: callers hand a buffer of at
// least dim * kApplyScratchPerDim complex values (the widest variant snapshots
// 8 complex lanes per input row before writing outputs in place).
inline constexpr int kApplyScratchPerDim = 8;

// Hot inner loops of the simulator. One table per instruction-set variant;
// all variants compute the same thing and are equivalence-tested against the
// scalar reference.
struct Kernels {
  const char* name;

  // In-place action of a dim x dim row-major complex matrix on dim rows of
  // `run` contiguous amplitudes each: for every s in [0, run),
  //   rows[o][s] <- sum_j m[o*dim + j] * rows[j][s].
  // Rows must not alias each other. Inputs for each s are snapshotted into
  // `scratch` before outputs are written, so in-place updates are safe.
  void (*apply_matrix_rows)(const cplx* m, int dim, cplx* const* rows,
                            std::size_t run, cplx* scratch);

  // sum_i conj(a[i]) * b[i]
  cplx (*dot_conjugate)(const cplx* a, const cplx* b, std::size_t n);

  // sum_i |a[i]|^2
  double (*norm_squared)(const cplx* a, std::size_t n);

  // a[i] *= factor
  void (*scale)(cplx* a, cplx factor, std::size_t n);
};

const Kernels& scalar_kernels();

// Variant currently selected for the process. Defaults to the widest ISA the
// CPU supports, or the QDSIM_KERNELS environment variable if set.
const Kernels& active_kernels();

// Names of every variant compiled in AND supported by this CPU.
std::vector<std::string> available_kernels();

// Select by name ("auto", "scalar", "avx2", "avx512"). Returns false if the
// variant is unknown, not compiled in, or unsupported on this CPU. Not meant
// to be called concurrently with running kernels.
bool select_kernels(std::string_view name);

}  // namespace qdsim::kernels
