#pragma once

#include <cstdint>
#include <vector>

#include "qdsim/gates.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

// Brickwork circuit on an open chain. One layer consists of gates on the odd
// bonds (1,2), (3,4), ... applied first, then gates on the even bonds
// (2,3), (4,5), ... Every bond of every layer holds an independently sampled
// gate; the gate for (layer t, bond b) is drawn from an RNG stream keyed by
// (seed, t, b), so the circuit is reproducible regardless of sampling order.
struct BrickworkCircuit {
  ChainConfig config;
  int depth = 0;
  // layers[t-1][b-1] is the gate of layer t on bond b (sites b, b+1).
  std::vector<std::vector<ChargeConservingGate>> layers;
};

BrickworkCircuit sample_circuit(const ChainConfig& config, int depth,
                                std::uint64_t seed);

// Apply layers t0+1 .. t1 of the circuit. evolve(psi, c, t) applies 1..t.
// Requires 0 <= t0 <= t1 <= depth.
StateVector evolve(const StateVector& psi, const BrickworkCircuit& circuit,
                   int t);
StateVector evolve_range(const StateVector& psi, const BrickworkCircuit& circuit,
                         int t0, int t1);

// Companion circuit with the middle-bond gate (sites N/2, N/2+1) of every
// layer replaced by the scalar phase <00|gate|00>. Requires N = 2 (mod 4) so
// the middle bond sits in the odd sublayer. Shares gate storage with the base
// circuit, which must outlive this object.
struct ModifiedCircuit {
  const BrickworkCircuit* base = nullptr;
  int middle_bond = 0;
  std::vector<cplx> layer_phase;  // layer_phase[t-1] multiplies layer t
};

ModifiedCircuit modify_circuit(const BrickworkCircuit& circuit);

// Evolution under the modified circuit. Norm-preserving; never entangles the
// two halves of the chain across the middle cut when the input is a product
// across it.
StateVector evolve_modified(const StateVector& psi, const ModifiedCircuit& mod,
                            int t);
StateVector evolve_modified_range(const StateVector& psi,
                                  const ModifiedCircuit& mod, int t0, int t1);

// Difference of the two evolutions of psi0 after t layers, and its norm:
//   delta = evolve(psi0, t) - evolve_modified(psi0, t).
struct Deviation {
  StateVector state;  // unnormalized
  double norm = 0.0;
};

Deviation deviation_state(const BrickworkCircuit& circuit,
                          const ModifiedCircuit& mod, const StateVector& psi0,
                          int t);

}  // namespace qdsim
