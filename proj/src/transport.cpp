#include "qdsim/transport.hpp"

#include <cmath>
#include <stdexcept>

#include "qdsim/circuit.hpp"
#include "qdsim/harness.hpp"
#include "qdsim/parallel.hpp"

namespace qdsim {

ChargeProfile charge_profile(const StateVector& psi) {
  if (!psi.normalized) {
    throw std::invalid_argument("charge_profile expects a normalized state");
  }
  ChargeProfile profile{{}, 0};
  profile.values.reserve(psi.config.num_sites);
  for (int site = 1; site <= psi.config.num_sites; ++site) {
    profile.values.push_back(charge_expectation(psi, site));
  }
  return profile;
}

ChargeProfile random_walk_oracle(const ChargeProfile& initial, int steps) {
  if (steps < 0) throw std::domain_error("steps must be >= 0");
  const int n = static_cast<int>(initial.values.size());
  if (n < 2) throw std::invalid_argument("profile needs at least two sites");
  ChargeProfile profile = initial;
  auto& q = profile.values;
  for (int step = 0; step < steps; ++step) {
    for (int bond = 1; bond <= n - 1; bond += 2) {
      const double mean = 0.5 * (q[bond - 1] + q[bond]);
      q[bond - 1] = mean;
      q[bond] = mean;
    }
    for (int bond = 2; bond <= n - 1; bond += 2) {
      const double mean = 0.5 * (q[bond - 1] + q[bond]);
      q[bond - 1] = mean;
      q[bond] = mean;
    }
  }
  profile.time = initial.time + steps;
  return profile;
}

namespace {

// Full <Q_i> history of one circuit realization.
std::vector<std::vector<double>> profile_history(const ChainConfig& config,
                                                 const std::vector<LocalBasisLabel>& initial,
                                                 int t_max, std::uint64_t circuit_seed) {
  const BrickworkCircuit circuit = sample_circuit(config, t_max, circuit_seed);
  StateVector psi = product_state(config, initial);
  std::vector<std::vector<double>> history;
  history.reserve(t_max + 1);
  history.push_back(charge_profile(psi).values);
  for (int t = 1; t <= t_max; ++t) {
    psi = evolve_range(psi, circuit, t - 1, t);
    history.push_back(charge_profile(psi).values);
  }
  return history;
}

std::vector<ProfileStats> reduce_histories(
    const std::vector<std::vector<std::vector<double>>>& histories, int t_max,
    int num_sites) {
  const int n_samples = static_cast<int>(histories.size());
  std::vector<ProfileStats> series(t_max + 1);
  for (int t = 0; t <= t_max; ++t) {
    ProfileStats& stats = series[t];
    stats.time = t;
    stats.n_samples = n_samples;
    stats.mean.assign(num_sites, 0.0);
    stats.std_error.assign(num_sites, 0.0);
    // Two-pass mean/variance in fixed realization order.
    for (const auto& history : histories) {
      for (int i = 0; i < num_sites; ++i) stats.mean[i] += history[t][i];
    }
    for (int i = 0; i < num_sites; ++i) stats.mean[i] /= n_samples;
    if (n_samples > 1) {
      for (const auto& history : histories) {
        for (int i = 0; i < num_sites; ++i) {
          const double dev = history[t][i] - stats.mean[i];
          stats.std_error[i] += dev * dev;
        }
      }
      for (int i = 0; i < num_sites; ++i) {
        stats.std_error[i] =
            std::sqrt(stats.std_error[i] / (n_samples - 1.0) / n_samples);
      }
    }
  }
  return series;
}

}  // namespace

std::vector<ProfileStats> ensemble_average_series(
    const ChainConfig& config, const std::vector<LocalBasisLabel>& initial,
    int t_max, int n_samples, std::uint64_t seed, int threads) {
  config.validate();
  if (t_max < 0) throw std::domain_error("t_max must be >= 0");
  if (n_samples < 1) throw std::domain_error("n_samples must be >= 1");
  std::vector<std::vector<std::vector<double>>> histories(n_samples);
  parallel_for(n_samples, threads, [&](int r) {
    histories[r] = profile_history(
        config, initial, t_max,
        rng::derive_seed(seed, rng::kCircuitStream, static_cast<std::uint64_t>(r)));
  });
  return reduce_histories(histories, t_max, config.num_sites);
}

ProfileStats ensemble_average_profile(const ChainConfig& config,
                                      const std::vector<LocalBasisLabel>& initial,
                                      int t, int n_samples, std::uint64_t seed,
                                      int threads) {
  return ensemble_average_series(config, initial, t, n_samples, seed,
                                 threads)[t];
}

DecayFit fit_decay(const std::vector<DecaySample>& samples, double noise_floor) {
  DecayFit fit;
  std::vector<double> xs, ys;
  for (const DecaySample& sample : samples) {
    if (sample.t < 1 || sample.q <= noise_floor) continue;
    fit.samples.push_back(sample);
    xs.push_back(static_cast<double>(sample.m) * sample.m / sample.t);
    ys.push_back(std::log(sample.q));
  }
  const int n = static_cast<int>(xs.size());
  fit.n_points = n;
  if (n < 3) {
    throw std::invalid_argument("decay fit needs at least 3 usable points");
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("decay fit: degenerate x values");
  const double b = sxy / sxx;  // log q ~ my + b (x - mx)
  fit.slope = -b;              // model is log q = intercept - slope * x
  fit.intercept = my - b * mx;
  double sse = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = ys[i] - (fit.intercept - fit.slope * xs[i]);
    sse += e * e;
  }
  fit.residual = std::sqrt(sse / n);
  fit.slope_std_error = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return fit;
}

DecayFit bulk_charge_decay(const ChainConfig& config, int m_max, int t_max,
                           int n_samples, std::uint64_t seed, int threads) {
  config.validate();
  const int n = config.num_sites;
  if (m_max < 2 || m_max % 2 != 0 || m_max > n - 2) {
    throw std::domain_error("m_max must be even and in [2, num_sites-2]");
  }
  if (t_max < 1) throw std::domain_error("t_max must be >= 1");
  if (n_samples < 1) throw std::domain_error("n_samples must be >= 1");
  const int monitored = n / 2;
  std::vector<DecaySample> samples;
  for (int w = 2; w <= m_max; w += 2) {
    // Mean <Q_{N/2}> over realizations; the central block starts empty, the
    // rest in random X labels redrawn per realization.
    std::vector<std::vector<double>> center(n_samples);
    parallel_for(n_samples, threads, [&](int r) {
      rng::Engine label_eng = rng::make_engine(seed, rng::kLabelStream,
                                               static_cast<std::uint64_t>(w),
                                               static_cast<std::uint64_t>(r));
      std::vector<LocalBasisLabel> labels = random_x_labels(config, label_eng);
      labels = blocked_labels(labels, n, w);
      const auto history = profile_history(
          config, labels, t_max,
          rng::derive_seed(seed, rng::kCircuitStream,
                           static_cast<std::uint64_t>(w),
                           static_cast<std::uint64_t>(r)));
      center[r].reserve(t_max + 1);
      for (int t = 0; t <= t_max; ++t) {
        center[r].push_back(history[t][monitored - 1]);
      }
    });
    for (int t = 1; t <= t_max; ++t) {
      double q = 0.0;
      for (int r = 0; r < n_samples; ++r) q += center[r][t];
      samples.push_back(DecaySample{w, t, q / n_samples});
    }
  }
  return fit_decay(samples);
}

std::vector<DecaySample> oracle_decay_series(int num_sites, int local_dim,
                                             int m_max, int t_max) {
  if (num_sites < 4 || num_sites % 2 != 0) {
    throw std::domain_error("num_sites must be even and >= 4");
  }
  if (m_max < 2 || m_max % 2 != 0 || m_max > num_sites - 2) {
    throw std::domain_error("m_max must be even and in [2, num_sites-2]");
  }
  const int monitored = num_sites / 2;
  std::vector<DecaySample> samples;
  for (int w = 2; w <= m_max; w += 2) {
    ChargeProfile profile{std::vector<double>(num_sites,
                                              static_cast<double>(local_dim - 1)),
                          0};
    const int first = num_sites / 2 - w / 2 + 1;
    for (int site = first; site < first + w; ++site) {
      profile.values[site - 1] = 0.0;
    }
    for (int t = 1; t <= t_max; ++t) {
      profile = random_walk_oracle(profile, 1);
      samples.push_back(DecaySample{w, t, profile.values[monitored - 1]});
    }
  }
  return samples;
}

ConditionCheck condition_inequality_check(const StateVector& psi, int site,
                                          double tol) {
  const Projected projected = project_local_zero(psi, {site});
  ConditionCheck check;
  check.lhs = psi.norm_squared() - projected.weight;
  check.rhs = charge_expectation(psi, site);
  check.holds = check.lhs <= check.rhs + tol;
  return check;
}

}  // namespace qdsim
