#include "qdsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "qdsim/parallel.hpp"
#include "qdsim/transport.hpp"

namespace qdsim {

namespace {

// Slack granted to every certified inequality; unitarity identities are held
// to the tighter kIdentityTol.
constexpr double kCertSlack = 1e-9;

// Set enumeration is exponential in m; refuse anything past desk scale.
constexpr std::size_t kMaxSetSize = 4096;

double abs_overlap(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

struct LayerStepper {
  const BrickworkCircuit& circuit;
  const ModifiedCircuit& mod;

  void advance(StateVector& u, int t) const {  // layer t under the full circuit
    u = evolve_range(u, circuit, t - 1, t);
  }
  void advance_modified(StateVector& v, int t) const {
    v = evolve_modified_range(v, mod, t - 1, t);
  }
};

double certificate_bound(double alpha, double lambda1_lower) {
  if (lambda1_lower <= 0.0) return std::numeric_limits<double>::infinity();
  return -2.0 * alpha / (alpha - 1.0) * std::log(lambda1_lower);
}

}  // namespace

void ExperimentSpec::validate(bool require_modified_parity) const {
  config.validate();
  const int n = config.num_sites;
  if (require_modified_parity && n % 4 != 2) {
    throw std::domain_error(
        "certified runs need num_sites = 2 (mod 4); the middle bond must sit "
        "in the odd sublayer");
  }
  if (depth < 0) throw std::domain_error("depth must be >= 0");
  if (m < 2 || m % 2 != 0 || m > n - 2) {
    throw std::domain_error("m must be even and in [2, num_sites-2]");
  }
  if (!(alpha > 1.0)) throw std::domain_error("alpha must be > 1");
  if (n_realizations < 1) throw std::domain_error("n_realizations must be >= 1");
  if (p_degree < 1) throw std::domain_error("p_degree must be >= 1");
  if (!(scaling_c > 0.0)) throw std::domain_error("scaling_c must be > 0");
}

int scaling_width(int t, double c, int num_sites) {
  if (t < 0) throw std::domain_error("t must be >= 0");
  int m = 2;
  if (t > 1) {
    const double x = c * std::sqrt(static_cast<double>(t) * std::log(t));
    m = 2 * static_cast<int>(std::ceil(x / 2.0));
    m = std::max(m, 2);
  }
  return std::min(m, num_sites - 2);
}

BrickworkCircuit realization_circuit(const ExperimentSpec& spec,
                                     int realization) {
  return sample_circuit(spec.config, spec.depth,
                        rng::derive_seed(spec.config.seed, rng::kCircuitStream,
                                         static_cast<std::uint64_t>(realization)));
}

std::vector<LocalBasisLabel> realization_labels(const ExperimentSpec& spec,
                                                int realization) {
  rng::Engine eng = rng::make_engine(spec.config.seed, rng::kLabelStream,
                                     static_cast<std::uint64_t>(realization));
  return random_x_labels(spec.config, eng);
}

std::vector<LocalBasisLabel> blocked_labels(const std::vector<LocalBasisLabel>& labels,
                                            int num_sites, int m) {
  if (static_cast<int>(labels.size()) != num_sites) {
    throw std::invalid_argument("one label per site required");
  }
  std::vector<LocalBasisLabel> out = labels;
  const int first = num_sites / 2 - m / 2 + 1;  // central block C
  for (int site = first; site < first + m; ++site) {
    out[site - 1] = z_label(0);
  }
  return out;
}

std::vector<ProofCertificate> run_instance(const ExperimentSpec& spec,
                                           int realization) {
  return certify_circuit(spec, realization_circuit(spec, realization),
                         realization_labels(spec, realization));
}

std::vector<ProofCertificate> certify_circuit(
    const ExperimentSpec& spec, const BrickworkCircuit& circuit,
    const std::vector<LocalBasisLabel>& labels) {
  spec.validate();
  const ChainConfig& cfg = spec.config;
  const int n = cfg.num_sites;
  if (circuit.config.num_sites != n || circuit.config.local_dim != cfg.local_dim) {
    throw std::invalid_argument("circuit was built for a different chain");
  }
  if (circuit.depth < spec.depth) {
    throw std::invalid_argument("circuit shallower than the requested depth");
  }
  const double ref = std::pow(static_cast<double>(cfg.local_dim),
                              -0.5 * spec.m);

  const ModifiedCircuit mod = modify_circuit(circuit);
  const LayerStepper step{circuit, mod};

  const StateVector psi_ini = product_state(cfg, labels);
  const StateVector psi0 = product_state(cfg, blocked_labels(labels, n, spec.m));

  StateVector u_ini = psi_ini;  // full circuit on the plain initial state
  StateVector u0 = psi0;        // full circuit on the blocked state
  StateVector v0 = psi0;        // modified circuit on the blocked state

  const double overlap0 = abs_overlap(psi0, psi_ini);

  std::vector<ProofCertificate> certs;
  certs.reserve(spec.depth + 1);
  for (int t = 0; t <= spec.depth; ++t) {
    if (t > 0) {
      step.advance(u_ini, t);
      step.advance(u0, t);
      step.advance_modified(v0, t);
    }
    ProofCertificate cert;
    cert.t = t;
    cert.overlap0 = overlap0;
    cert.overlap_t = abs_overlap(u0, u_ini);
    cert.v_overlap = abs_overlap(v0, u_ini);

    double delta_sq = 0.0;
    for (std::size_t i = 0; i < u0.amplitudes.size(); ++i) {
      const cplx diff = u0.amplitudes[i] - v0.amplitudes[i];
      delta_sq += diff.real() * diff.real() + diff.imag() * diff.imag();
    }
    cert.delta_norm = std::sqrt(delta_sq);

    const SchmidtSpectrum spectrum = schmidt_spectrum(u_ini, n / 2);
    cert.Lambda1 = spectrum.values.front();
    cert.lambda1 = std::sqrt(cert.Lambda1);
    cert.R_alpha = renyi_entropy(spectrum, spec.alpha);
    cert.R_inf = min_entropy(spectrum);

    const double lambda1_lower = std::max(cert.v_overlap, ref - cert.delta_norm);
    cert.bound = certificate_bound(spec.alpha, lambda1_lower);

    const bool a = std::abs(cert.overlap0 - ref) <= kIdentityTol &&
                   std::abs(cert.overlap_t - ref) <= kIdentityTol;
    const bool b = cert.v_overlap >= cert.overlap_t - cert.delta_norm - kCertSlack;
    const bool c = cert.lambda1 >= cert.v_overlap - kCertSlack;
    const bool d = cert.R_alpha <=
                   spec.alpha / (spec.alpha - 1.0) * cert.R_inf + kCertSlack;
    const bool e = cert.R_alpha <= cert.bound + kCertSlack;
    cert.holds = a && b && c && d && e;
    certs.push_back(cert);
  }
  return certs;
}

std::vector<std::vector<ProofCertificate>> run_realizations(
    const ExperimentSpec& spec, int threads) {
  spec.validate();
  std::vector<std::vector<ProofCertificate>> out(spec.n_realizations);
  parallel_for(spec.n_realizations, threads,
               [&](int r) { out[r] = run_instance(spec, r); });
  return out;
}

SPrimeReport enumerate_s_prime(const ExperimentSpec& spec, int t,
                               int realization) {
  spec.validate();
  if (t < 0 || t > spec.depth) throw std::domain_error("t out of [0, depth]");
  const ChainConfig& cfg = spec.config;
  const int n = cfg.num_sites;
  const int d = cfg.local_dim;
  const std::size_t set_size = pow_sz(d, spec.m);
  if (set_size > kMaxSetSize) {
    throw std::invalid_argument("set enumeration capped at 4096 members");
  }

  const BrickworkCircuit circuit = realization_circuit(spec, realization);
  const ModifiedCircuit mod = modify_circuit(circuit);
  const std::vector<LocalBasisLabel> labels = realization_labels(spec, realization);
  const StateVector psi0 = product_state(cfg, blocked_labels(labels, n, spec.m));

  const Deviation delta = deviation_state(circuit, mod, psi0, t);

  SPrimeReport report;
  report.m = spec.m;
  report.t = t;
  report.p_value = std::pow(static_cast<double>(t), spec.p_degree);
  report.delta_norm_sq = delta.norm * delta.norm;
  report.threshold = std::pow(static_cast<double>(d), -0.5 * spec.m) *
                     delta.norm * std::sqrt(report.p_value);
  report.set_size = set_size;

  const int first = n / 2 - spec.m / 2 + 1;
  for (std::size_t member = 0; member < set_size; ++member) {
    // Digits of `member` choose the X label on each site of the central
    // block, most significant digit on the leftmost site.
    std::vector<LocalBasisLabel> member_labels = labels;
    std::size_t rem = member;
    for (int j = spec.m - 1; j >= 0; --j) {
      member_labels[first - 1 + j] = x_label(static_cast<int>(rem % d));
      rem /= d;
    }
    const StateVector evolved =
        evolve(product_state(cfg, member_labels), circuit, t);
    const double val = std::abs(inner_product(delta.state, evolved));
    report.sum_sq_overlap += val * val;
    if (val <= report.threshold) ++report.kept;
  }
  report.fraction = static_cast<double>(report.kept) / set_size;

  // Both of these are theorems for an orthonormal family; failure means the
  // implementation is broken, not the run.
  if (report.sum_sq_overlap > report.delta_norm_sq + kDriftTol) {
    throw std::logic_error("set census: mean-square identity violated");
  }
  if (report.p_value > 1.0 && report.fraction < 1.0 - 1.0 / report.p_value) {
    throw std::logic_error("set census: Markov fraction violated");
  }
  return report;
}

std::vector<SweepRecord> entropy_growth_sweep(const ExperimentSpec& spec,
                                              int threads) {
  spec.validate();
  const ChainConfig& cfg = spec.config;
  const int n = cfg.num_sites;
  std::vector<std::vector<SweepRecord>> per_realization(spec.n_realizations);

  parallel_for(spec.n_realizations, threads, [&](int r) {
    const BrickworkCircuit circuit = realization_circuit(spec, r);
    const ModifiedCircuit mod = modify_circuit(circuit);
    const LayerStepper step{circuit, mod};
    const std::vector<LocalBasisLabel> labels = realization_labels(spec, r);

    // Width of the empty block per time step.
    std::vector<int> width(spec.depth + 1, spec.m);
    if (spec.mode == WidthMode::kScaling) {
      for (int t = 0; t <= spec.depth; ++t) {
        width[t] = scaling_width(t, spec.scaling_c, n);
      }
    }

    std::vector<SweepRecord>& records = per_realization[r];
    records.resize(spec.depth + 1);

    // Pass 1: entropies and the midpoint charge of the evolved initial state.
    StateVector u_ini = product_state(cfg, labels);
    for (int t = 0; t <= spec.depth; ++t) {
      if (t > 0) step.advance(u_ini, t);
      const SchmidtSpectrum spectrum = schmidt_spectrum(u_ini, n / 2);
      SweepRecord& rec = records[t];
      rec.realization = r;
      rec.t = t;
      rec.R_alpha = renyi_entropy(spectrum, spec.alpha);
      rec.R_inf = min_entropy(spectrum);
      rec.q_mid = charge_expectation(u_ini, n / 2);
    }

    // Pass 2: certified ceiling, one joint evolution per distinct width.
    std::map<int, std::vector<int>> times_by_width;
    for (int t = 0; t <= spec.depth; ++t) times_by_width[width[t]].push_back(t);
    const double d = cfg.local_dim;
    for (const auto& [w, times] : times_by_width) {
      const double ref = std::pow(d, -0.5 * w);
      const StateVector psi0 = product_state(cfg, blocked_labels(labels, n, w));
      StateVector u_ref = product_state(cfg, labels);
      StateVector u0 = psi0;
      StateVector v0 = psi0;
      auto next = times.begin();
      for (int t = 0; t <= spec.depth && next != times.end(); ++t) {
        if (t > 0) {
          step.advance(u_ref, t);
          step.advance(u0, t);
          step.advance_modified(v0, t);
        }
        if (t != *next) continue;
        ++next;
        double delta_sq = 0.0;
        for (std::size_t i = 0; i < u0.amplitudes.size(); ++i) {
          const cplx diff = u0.amplitudes[i] - v0.amplitudes[i];
          delta_sq += diff.real() * diff.real() + diff.imag() * diff.imag();
        }
        const double delta_norm = std::sqrt(delta_sq);
        const double v_overlap = abs_overlap(v0, u_ref);
        const double lambda1_lower = std::max(v_overlap, ref - delta_norm);
        records[t].bound = certificate_bound(spec.alpha, lambda1_lower);
      }
    }
  });

  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(spec.n_realizations) *
                  (spec.depth + 1));
  for (const auto& chunk : per_realization) {
    records.insert(records.end(), chunk.begin(), chunk.end());
  }
  return records;
}

std::vector<SweepAggregate> aggregate_sweep(
    const std::vector<SweepRecord>& records) {
  std::map<int, std::vector<const SweepRecord*>> by_time;
  for (const SweepRecord& rec : records) by_time[rec.t].push_back(&rec);
  std::vector<SweepAggregate> out;
  out.reserve(by_time.size());
  for (const auto& [t, rows] : by_time) {
    SweepAggregate agg;
    agg.t = t;
    const int n = static_cast<int>(rows.size());
    for (const SweepRecord* rec : rows) {
      agg.mean_R_alpha += rec->R_alpha;
      agg.mean_bound += rec->bound;
      agg.mean_q_mid += rec->q_mid;
    }
    agg.mean_R_alpha /= n;
    agg.mean_bound /= n;
    agg.mean_q_mid /= n;
    if (n > 1) {
      double ss = 0.0;
      for (const SweepRecord* rec : rows) {
        const double dev = rec->R_alpha - agg.mean_R_alpha;
        ss += dev * dev;
      }
      agg.stderr_R_alpha = std::sqrt(ss / (n - 1.0) / n);
    }
    out.push_back(agg);
  }
  return out;
}

}  // namespace qdsim
