#include "qdsim/circuit.hpp"

#include <stdexcept>

#include "qdsim/kernels.hpp"

namespace qdsim {

namespace {

struct ApplyWorkspace {
  std::vector<cplx> scratch;
  std::vector<cplx*> rows;

  explicit ApplyWorkspace(int d)
      : scratch(static_cast<std::size_t>(d) * kernels::kApplyScratchPerDim),
        rows(d) {}
};

void check_layer_range(const BrickworkCircuit& circuit, int t0, int t1) {
  if (t0 < 0 || t1 < t0 || t1 > circuit.depth) {
    throw std::domain_error("layer range out of [0, depth]");
  }
}

// One brickwork layer: odd bonds first, then even bonds. skip_bond = 0 means
// apply everything.
void apply_layer(StateVector& psi, const std::vector<ChargeConservingGate>& layer,
                 int skip_bond, ApplyWorkspace& ws) {
  const int n = psi.config.num_sites;
  for (int bond = 1; bond <= n - 1; bond += 2) {
    if (bond == skip_bond) continue;
    apply_gate_in_place(psi, layer[bond - 1], bond, ws.scratch.data(),
                        ws.rows.data());
  }
  for (int bond = 2; bond <= n - 1; bond += 2) {
    if (bond == skip_bond) continue;
    apply_gate_in_place(psi, layer[bond - 1], bond, ws.scratch.data(),
                        ws.rows.data());
  }
}

}  // namespace

BrickworkCircuit sample_circuit(const ChainConfig& config, int depth,
                                std::uint64_t seed) {
  config.validate();
  if (depth < 0) throw std::domain_error("depth must be >= 0");
  BrickworkCircuit circuit{config, depth, {}};
  circuit.layers.resize(depth);
  for (int t = 1; t <= depth; ++t) {
    auto& layer = circuit.layers[t - 1];
    layer.reserve(config.num_sites - 1);
    for (int bond = 1; bond <= config.num_sites - 1; ++bond) {
      rng::Engine eng = rng::make_engine(seed, rng::kGateStream,
                                         static_cast<std::uint64_t>(t),
                                         static_cast<std::uint64_t>(bond));
      layer.push_back(sample_gate(config.local_dim, eng));
    }
  }
  return circuit;
}

StateVector evolve_range(const StateVector& psi, const BrickworkCircuit& circuit,
                         int t0, int t1) {
  if (!psi.config.same_space(circuit.config)) {
    throw std::invalid_argument("state and circuit disagree on the chain");
  }
  check_layer_range(circuit, t0, t1);
  StateVector out = psi;
  ApplyWorkspace ws(psi.config.local_dim);
  for (int t = t0 + 1; t <= t1; ++t) {
    apply_layer(out, circuit.layers[t - 1], 0, ws);
  }
  return out;
}

StateVector evolve(const StateVector& psi, const BrickworkCircuit& circuit,
                   int t) {
  return evolve_range(psi, circuit, 0, t);
}

ModifiedCircuit modify_circuit(const BrickworkCircuit& circuit) {
  const int n = circuit.config.num_sites;
  if (n % 4 != 2) {
    throw std::domain_error(
        "modified circuit needs num_sites = 2 (mod 4) so the middle bond is "
        "in the odd sublayer");
  }
  ModifiedCircuit mod{&circuit, n / 2, {}};
  mod.layer_phase.reserve(circuit.depth);
  for (int t = 1; t <= circuit.depth; ++t) {
    mod.layer_phase.push_back(
        gate_phase_00(circuit.layers[t - 1][mod.middle_bond - 1]));
  }
  return mod;
}

StateVector evolve_modified_range(const StateVector& psi,
                                  const ModifiedCircuit& mod, int t0, int t1) {
  const BrickworkCircuit& circuit = *mod.base;
  if (!psi.config.same_space(circuit.config)) {
    throw std::invalid_argument("state and circuit disagree on the chain");
  }
  check_layer_range(circuit, t0, t1);
  StateVector out = psi;
  ApplyWorkspace ws(psi.config.local_dim);
  const auto& kern = kernels::active_kernels();
  for (int t = t0 + 1; t <= t1; ++t) {
    apply_layer(out, circuit.layers[t - 1], mod.middle_bond, ws);
    // The middle-bond gate is replaced by its charge-0 phase, applied
    // globally; this never entangles the two halves.
    kern.scale(out.amplitudes.data(), mod.layer_phase[t - 1],
               out.amplitudes.size());
  }
  return out;
}

StateVector evolve_modified(const StateVector& psi, const ModifiedCircuit& mod,
                            int t) {
  return evolve_modified_range(psi, mod, 0, t);
}

Deviation deviation_state(const BrickworkCircuit& circuit,
                          const ModifiedCircuit& mod, const StateVector& psi0,
                          int t) {
  if (mod.base != &circuit) {
    throw std::invalid_argument("modified circuit does not wrap this circuit");
  }
  StateVector u = evolve(psi0, circuit, t);
  const StateVector v = evolve_modified(psi0, mod, t);
  for (std::size_t i = 0; i < u.amplitudes.size(); ++i) {
    u.amplitudes[i] -= v.amplitudes[i];
  }
  u.normalized = false;
  const double norm = u.norm();
  return Deviation{std::move(u), norm};
}

}  // namespace qdsim
