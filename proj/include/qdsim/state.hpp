#pragma once

#include <vector>

#include "qdsim/chain_config.hpp"
#include "qdsim/common.hpp"
#include "qdsim/rng.hpp"

namespace qdsim {

// Single-site basis label: Z(k) is the charge eigenstate |k>, X(k) the k-th
// eigenstate of the cyclic shift X|j> = |(j+1) mod d>,
//   |k) = d^{-1/2} sum_j exp(2*pi*i*j*k/d) |j>,   X|k) = w^{-k} |k).
// The two bases are mutually unbiased: |<j|k)| = d^{-1/2}.
struct LocalBasisLabel {
  enum class Kind { Z, X };
  Kind kind = Kind::Z;
  int k = 0;
};

inline LocalBasisLabel z_label(int k) { return {LocalBasisLabel::Kind::Z, k}; }
inline LocalBasisLabel x_label(int k) { return {LocalBasisLabel::Kind::X, k}; }

// Local d-vectors for the two bases. Throws std::domain_error on k out of
// [0, d).
std::vector<cplx> z_basis_state(int k, int d);
std::vector<cplx> x_eigenstate(int k, int d);

// Dense statevector over the full chain, amplitudes big-endian in the site
// digits. Treated as a value: operations return fresh states.
struct StateVector {
  ChainConfig config;
  std::vector<cplx> amplitudes;
  // Cleared by projections / subtractions that leave the vector unnormalized.
  bool normalized = true;

  double norm_squared() const;
  double norm() const;
};

// All-|0...0> computational basis state.
StateVector zero_state(const ChainConfig& config);

// Product state from one label per site.
StateVector product_state(const ChainConfig& config,
                          const std::vector<LocalBasisLabel>& labels);

// Gaussian random state, normalized. Test/selftest utility.
StateVector random_gaussian_state(const ChainConfig& config, rng::Engine& eng);

// One uniformly random X label per site.
std::vector<LocalBasisLabel> random_x_labels(const ChainConfig& config,
                                             rng::Engine& eng);

// <a|b>, conjugate-linear in a. Throws std::invalid_argument on a space
// mismatch.
cplx inner_product(const StateVector& a, const StateVector& b);

// <psi| Q_site |psi> with Q|k> = k|k>; in [0, d-1] for normalized psi.
double charge_expectation(const StateVector& psi, int site);

// Result of projecting the listed sites onto |0>: the (unnormalized)
// projected state and its squared norm.
struct Projected {
  StateVector state;
  double weight = 0.0;
};

Projected project_local_zero(const StateVector& psi,
                             const std::vector<int>& sites);

}  // namespace qdsim
