#pragma once

#include <utility>
#include <vector>

#include "qdsim/rng.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

// Total-charge sector of a two-site block. For local dimension d the pair
// charge s = k1 + k2 runs over 0..2(d-1) with
//   dim(s) = d - |s - (d - 1)|          (1, 2, ..., d, ..., 2, 1),
// and the in-sector basis is ordered lexicographically by k1:
//   s = 2, d = 3:  |02>, |11>, |20>.
// The basis is swap-symmetric: (k1, k2) in sector s  <=>  (k2, k1) is too.
struct ChargeSector {
  int total_charge = 0;
  std::vector<std::pair<int, int>> basis;  // (k1, k2), k1 ascending
  int dim() const { return static_cast<int>(basis.size()); }
};

// All 2d-1 sectors, total_charge ascending. Sector dims sum to d^2.
std::vector<ChargeSector> sector_decomposition(int d);

// Dense row-major complex matrix, the in-sector block type.
struct BlockMatrix {
  int dim = 0;
  std::vector<cplx> a;  // dim * dim, row-major

  static BlockMatrix zero(int n) { return {n, std::vector<cplx>(n * n)}; }
  static BlockMatrix identity(int n);
  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  const cplx& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
};

// Haar-random n x n unitary: complex Ginibre -> QR -> multiply each column of
// Q by the phase of the matching diagonal entry of R. The phase correction is
// what makes the QR output Haar rather than merely unitary.
BlockMatrix haar_unitary(int n, rng::Engine& eng);

// Two-site charge-conserving gate: one unitary block per total-charge sector.
struct ChargeConservingGate {
  int local_dim = 0;
  std::vector<BlockMatrix> blocks;  // indexed by total_charge
};

// Independent Haar blocks in every sector.
ChargeConservingGate sample_gate(int d, rng::Engine& eng);

ChargeConservingGate identity_gate(int d);

// d^2 x d^2 row-major matrix in the computational pair basis (index
// k1*d + k2). Off-sector entries are exact zeros.
std::vector<cplx> assemble_dense(const ChargeConservingGate& gate);

// <00|gate|00>: the 1x1 charge-0 block, always a pure phase.
cplx gate_phase_00(const ChargeConservingGate& gate);

// Apply the gate to sites (bond, bond+1), 1 <= bond <= num_sites - 1.
// Preserves the norm and the total-charge expectation.
StateVector apply_gate(const StateVector& psi, const ChargeConservingGate& gate,
                       int bond);

// In-place variant used by the evolution loops. scratch needs
// d * kernels::kApplyScratchPerDim complex entries; rows needs d pointers.
void apply_gate_in_place(StateVector& psi, const ChargeConservingGate& gate,
                         int bond, cplx* scratch, cplx** rows);

}  // namespace qdsim
