#pragma once

#include <cstdint>
#include <vector>

#include "qdsim/circuit.hpp"
#include "qdsim/entanglement.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

// How the width m of the central empty block scales with time in sweeps.
enum class WidthMode {
  kFixed,    // constant m
  kScaling,  // m(t) = smallest even integer >= c*sqrt(t*log t), clamped to
             // [2, N-2]; m(0) = m(1) = 2
};

// Full description of a certified run. The chain is split at the middle cut
// N/2 : N/2; the central block C is the m sites N/2-m/2+1 .. N/2+m/2.
struct ExperimentSpec {
  ChainConfig config;
  int depth = 0;             // layers to certify, t = 0..depth
  int m = 2;                 // even, 2 <= m <= N-2
  double alpha = 2.0;        // Renyi index, > 1
  int n_realizations = 1;
  int p_degree = 2;          // p(t) = t^p_degree in the set enumeration
  WidthMode mode = WidthMode::kFixed;
  double scaling_c = 2.0;

  // require_modified_parity: certificates need N = 2 (mod 4).
  void validate(bool require_modified_parity = true) const;
};

int scaling_width(int t, double c, int num_sites);

// Everything checked at a single time t for one realization. The chain of
// inequalities, each with slack tolerance:
//  (a) overlap0 and overlap_t equal d^{-m/2}          (unitarity, 1e-12)
//  (b) v_overlap >= overlap_t - delta_norm            (triangle)
//  (c) lambda1   >= v_overlap                         (rank-1 witness)
//  (d) R_alpha   <= (alpha/(alpha-1)) R_inf           (entropy sandwich)
//  (e) R_alpha   <= bound                             (certified bound)
// with bound = (2 alpha/(alpha-1)) * (-log lambda1_lower),
// lambda1_lower = max(v_overlap, d^{-m/2} - delta_norm).
struct ProofCertificate {
  int t = 0;
  double overlap0 = 0.0;
  double overlap_t = 0.0;
  double delta_norm = 0.0;
  double v_overlap = 0.0;
  double lambda1 = 0.0;   // largest Schmidt coefficient at the middle cut
  double Lambda1 = 0.0;   // = lambda1^2
  double R_alpha = 0.0;
  double R_inf = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// One circuit + one random X-basis product initial state, certificates for
// every t <= depth. realization indexes the derived seed streams.
std::vector<ProofCertificate> run_instance(const ExperimentSpec& spec,
                                           int realization);

// Same, but against an explicit circuit (e.g. loaded from a replay file) and
// explicit initial labels. The circuit must cover spec.depth layers.
std::vector<ProofCertificate> certify_circuit(
    const ExperimentSpec& spec, const BrickworkCircuit& circuit,
    const std::vector<LocalBasisLabel>& labels);

// All realizations; results indexed [realization][t].
std::vector<std::vector<ProofCertificate>> run_realizations(
    const ExperimentSpec& spec, int threads = 1);

// Census of the orthonormal family S (all d^m X-label assignments on the
// central block, the rest of the initial state fixed) against the deviation
// vector at time t: members with |<delta_t | U psi>| <= threshold =
// d^{-m/2} ||delta_t|| sqrt(p(t)) form S'. Mean-square and Markov guarantees
// are re-checked internally (std::logic_error on violation — they are
// theorems, so a violation means an implementation bug).
struct SPrimeReport {
  int m = 0;
  int t = 0;
  double p_value = 0.0;          // t^p_degree
  double threshold = 0.0;
  double fraction = 0.0;         // |S'| / |S|
  double sum_sq_overlap = 0.0;   // sum over S of |<delta|U psi>|^2
  double delta_norm_sq = 0.0;
  std::size_t set_size = 0;
  std::size_t kept = 0;
};

// Refuses d^m > 4096 members.
SPrimeReport enumerate_s_prime(const ExperimentSpec& spec, int t,
                               int realization);

// Entropy growth with the certified ceiling alongside. q_mid is <Q_{N/2}> of
// the evolved state.
struct SweepRecord {
  int realization = 0;
  int t = 0;
  double R_alpha = 0.0;
  double R_inf = 0.0;
  double bound = 0.0;
  double q_mid = 0.0;
};

std::vector<SweepRecord> entropy_growth_sweep(const ExperimentSpec& spec,
                                              int threads = 1);

// Aggregate of one column of the sweep at fixed t.
struct SweepAggregate {
  int t = 0;
  double mean_R_alpha = 0.0;
  double stderr_R_alpha = 0.0;
  double mean_bound = 0.0;
  double mean_q_mid = 0.0;
};

std::vector<SweepAggregate> aggregate_sweep(const std::vector<SweepRecord>& records);

// Derived per-realization inputs shared by the harness entry points.
BrickworkCircuit realization_circuit(const ExperimentSpec& spec, int realization);
std::vector<LocalBasisLabel> realization_labels(const ExperimentSpec& spec,
                                                int realization);
// Labels of psi0: central block forced to Z(0), rest copied from `labels`.
std::vector<LocalBasisLabel> blocked_labels(const std::vector<LocalBasisLabel>& labels,
                                            int num_sites, int m);

}  // namespace qdsim
