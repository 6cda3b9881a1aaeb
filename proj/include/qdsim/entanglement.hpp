#pragma once

#include <vector>

#include "qdsim/state.hpp"

namespace qdsim {

// Squared Schmidt coefficients of psi across the cut between sites `cut` and
// cut+1, descending. Computed from the singular values of the reshaped
// d^cut x d^(N-cut) amplitude matrix (never by diagonalizing a reduced
// density matrix). Values below `clip` are removed as rounding noise, the
// rest renormalized to sum 1; the removed mass is recorded.
struct SchmidtSpectrum {
  std::vector<double> values;  // descending, sum 1 (after clipping)
  int cut = 0;
  double clipped_mass = 0.0;
};

SchmidtSpectrum schmidt_spectrum(const StateVector& psi, int cut,
                                 double clip = kSpectrumClip);

// Renyi entropy (1/(1-alpha)) log sum_i v_i^alpha, natural log by default
// (pass log_base to rescale). alpha <= 0 throws std::domain_error; alpha
// within 1e-6 of 1 is routed to the von Neumann formula. Evaluated in
// factored form around the largest value so huge alpha stays finite.
double renyi_entropy(const SchmidtSpectrum& spec, double alpha,
                     double log_base = 0.0 /* 0 = natural */);

// -log v_1 (the alpha -> infinity limit).
double min_entropy(const SchmidtSpectrum& spec, double log_base = 0.0);

// -sum_i v_i log v_i with 0 log 0 = 0.
double von_neumann_entropy(const SchmidtSpectrum& spec, double log_base = 0.0);

// Sandwich R_inf <= R_alpha <= (alpha/(alpha-1)) R_inf for alpha > 1.
struct SandwichCheck {
  double lhs = 0.0;   // R_inf
  double mid = 0.0;   // R_alpha
  double rhs = 0.0;   // (alpha/(alpha-1)) R_inf
  bool holds = false;
};

SandwichCheck check_entropy_sandwich(const SchmidtSpectrum& spec, double alpha,
                                     double tol = kDriftTol);

// Largest overlap a rank <= `rank` state across the same cut can have with
// the state carrying this spectrum: sqrt(v_1 + ... + v_rank).
double eckart_young_overlap(const SchmidtSpectrum& spec, int rank);

}  // namespace qdsim
