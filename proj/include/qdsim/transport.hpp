#pragma once

#include <cstdint>
#include <vector>

#include "qdsim/state.hpp"

namespace qdsim {

// Site-resolved charge expectations <Q_i> at a fixed time. values[i-1] is
// site i.
struct ChargeProfile {
  std::vector<double> values;
  int time = 0;
};

// Profile of a normalized state. Throws std::invalid_argument if psi carries
// the unnormalized flag.
ChargeProfile charge_profile(const StateVector& psi);

// Exact ensemble average of the charge profile under brickwork layers of
// independent in-sector Haar gates: averaging one gate on bond (i, i+1)
// replaces (q_i, q_{i+1}) by their mean, so a layer is the odd-bond averaging
// pass followed by the even-bond pass. Iterated for `steps` layers. Purely
// classical: no statevector involved, any chain length.
ChargeProfile random_walk_oracle(const ChargeProfile& initial, int steps);

// Monte Carlo profile statistics at one time.
struct ProfileStats {
  std::vector<double> mean;
  std::vector<double> std_error;  // sample stddev / sqrt(n)
  int time = 0;
  int n_samples = 0;
};

// Evolve the product state `initial` under n_samples independently sampled
// circuits (seeds derived per realization) and average <Q_i> at every time
// 0..t_max. Accumulation order is fixed, so results are reproducible for a
// given seed regardless of thread count.
std::vector<ProfileStats> ensemble_average_series(
    const ChainConfig& config, const std::vector<LocalBasisLabel>& initial,
    int t_max, int n_samples, std::uint64_t seed, int threads = 1);

ProfileStats ensemble_average_profile(const ChainConfig& config,
                                      const std::vector<LocalBasisLabel>& initial,
                                      int t, int n_samples, std::uint64_t seed,
                                      int threads = 1);

// One point of the central-charge decay sweep: monitored charge q at the
// chain center after t layers, with an initially empty block of m central
// sites.
struct DecaySample {
  int m = 0;
  int t = 0;
  double q = 0.0;
};

// Least-squares fit of log q against x = m^2/t:  log q ~ intercept - slope*x.
// Samples with q below noise_floor are excluded.
struct DecayFit {
  std::vector<DecaySample> samples;
  double slope = 0.0;       // decay rate; positive means q falls with m^2/t
  double intercept = 0.0;
  double slope_std_error = 0.0;
  double residual = 0.0;    // rms of log-residuals
  int n_points = 0;
};

DecayFit fit_decay(const std::vector<DecaySample>& samples,
                   double noise_floor = 1e-8);

// Monte Carlo sweep feeding fit_decay: for every even width w = 2..m_max and
// t = 1..t_max, average <Q_{N/2}> over n_samples circuits with the w central
// sites initialized to |0> and the rest to random X labels.
DecayFit bulk_charge_decay(const ChainConfig& config, int m_max, int t_max,
                           int n_samples, std::uint64_t seed, int threads = 1);

// Classical counterpart used as a test oracle: same sweep under
// random_walk_oracle with the outer region fully charged (q = d-1).
std::vector<DecaySample> oracle_decay_series(int num_sites, int local_dim,
                                             int m_max, int t_max);

// ||(1 - |0><0|_site) psi||^2 <= <Q_site> for normalized psi: the weight
// outside the local zero state is bounded by the local charge.
struct ConditionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

ConditionCheck condition_inequality_check(const StateVector& psi, int site,
                                          double tol = kDriftTol);

}  // namespace qdsim
