// Command-line front end for the qudit-chain simulator: entropy sweeps,
// proof certificates, deviation set census, charge transport, selftest.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qdsim/chain_config.hpp"
#include "qdsim/circuit.hpp"
#include "qdsim/entanglement.hpp"
#include "qdsim/gates.hpp"
#include "qdsim/harness.hpp"
#include "qdsim/io.hpp"
#include "qdsim/kernels.hpp"
#include "qdsim/parallel.hpp"
#include "qdsim/rng.hpp"
#include "qdsim/state.hpp"
#include "qdsim/transport.hpp"

namespace {

using namespace qdsim;

constexpr int kExitBad = 1;       // a certified inequality or selftest failed
constexpr int kExitUsage = 2;     // invalid arguments or config

struct Options {
  int N = 10;
  int d = 2;
  int depth = 10;
  int m = 2;
  double alpha = 2.0;
  std::uint64_t seed = 1;
  int realizations = 1;
  int p_degree = 2;
  double scaling_c = 2.0;
  int threads = 1;
  int charge_site = 0;  // 0 = chain midpoint
  bool oracle = false;
  std::string out;      // empty = stdout
  std::string format = "csv";
  std::string kernel;  // empty = leave the library default (env or auto)
  std::string mode = "fixed";
  std::string config_path;
  std::string dump_circuit;
  std::string replay_circuit;
  std::string fit_out;
};

// Keys accepted in a --config file; spelled like the long options.
const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys = {
      "N",         "d",       "depth",   "m",           "alpha",
      "seed",      "realizations",       "p-degree",    "scaling-c",
      "threads",   "charge-site",        "oracle",      "out",
      "format",    "kernel",  "mode",    "dump-circuit", "replay-circuit",
      "fit-out"};
  return keys;
}

// Turn a flat JSON object into option tokens and splice them in directly
// after the subcommand. Explicit command-line flags come later in the token
// stream and win under the take-last policy.
std::vector<std::string> inject_config_tokens(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;

  const nlohmann::json doc = nlohmann::json::parse(io::read_text_file(path));
  if (!doc.is_object()) {
    throw std::invalid_argument("config must be a flat JSON object");
  }
  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    if (config_keys().count(key) == 0) {
      throw std::invalid_argument("unknown config key: " + key);
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
    } else if (value.is_string()) {
      tokens.push_back("--" + key);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      tokens.push_back("--" + key);
      tokens.push_back(value.dump());
    } else {
      throw std::invalid_argument("config value for '" + key +
                                  "' must be a scalar");
    }
  }
  auto pos = args.begin();
  while (pos != args.end() && !pos->empty() && (*pos)[0] == '-') ++pos;
  if (pos == args.end()) {
    throw std::invalid_argument("--config needs a subcommand");
  }
  ++pos;
  args.insert(pos, tokens.begin(), tokens.end());
  return args;
}

template <typename T>
CLI::Option* add_opt(CLI::App* cmd, const std::string& name, T& ref,
                     const std::string& desc) {
  return cmd->add_option(name, ref, desc)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_chain_opts(CLI::App* cmd, Options& o) {
  add_opt(cmd, "--N", o.N, "number of sites (even)");
  add_opt(cmd, "--d", o.d, "local dimension, >= 2");
  add_opt(cmd, "--depth", o.depth, "brickwork layers to apply");
  add_opt(cmd, "--seed", o.seed, "master seed; all streams derive from it");
  add_opt(cmd, "--realizations", o.realizations, "independent circuit samples");
  add_opt(cmd, "--threads", o.threads, "worker threads over realizations");
  add_opt(cmd, "--kernel", o.kernel,
          "auto|scalar|avx2|avx512; default QDSIM_KERNELS env or auto");
  add_opt(cmd, "--out", o.out, "output path; default stdout");
  add_opt(cmd, "--format", o.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_opt(cmd, "--config", o.config_path,
          "flat JSON object of long option names; explicit flags win");
}

void add_block_opts(CLI::App* cmd, Options& o) {
  add_opt(cmd, "--m", o.m, "width of the central |0> block (even)");
  add_opt(cmd, "--alpha", o.alpha, "Renyi order, > 1");
  add_opt(cmd, "--p-degree", o.p_degree, "census threshold scales as t^p");
  add_opt(cmd, "--scaling-c", o.scaling_c,
          "prefactor of the sqrt(t log t) block width");
}

ExperimentSpec make_spec(const Options& o) {
  ExperimentSpec spec;
  spec.config = ChainConfig{o.N, o.d, o.seed};
  spec.depth = o.depth;
  spec.m = o.m;
  spec.alpha = o.alpha;
  spec.n_realizations = o.realizations;
  spec.p_degree = o.p_degree;
  spec.mode = o.mode == "scaling" ? WidthMode::kScaling : WidthMode::kFixed;
  spec.scaling_c = o.scaling_c;
  return spec;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(o.out, text);
    std::cerr << "wrote " << o.out << "\n";
  }
}

int run_certify(const Options& o) {
  const ExperimentSpec spec = make_spec(o);
  spec.validate();

  std::vector<std::vector<ProofCertificate>> results;
  if (!o.replay_circuit.empty()) {
    const BrickworkCircuit circuit = io::load_circuit(o.replay_circuit);
    results.push_back(certify_circuit(spec, circuit, realization_labels(spec, 0)));
    if (!o.dump_circuit.empty()) io::save_circuit(circuit, o.dump_circuit);
  } else {
    results = run_realizations(spec, o.threads);
    if (!o.dump_circuit.empty()) {
      io::save_circuit(realization_circuit(spec, 0), o.dump_circuit);
    }
  }

  std::size_t rows = 0;
  std::size_t violations = 0;
  for (const auto& certs : results) {
    rows += certs.size();
    for (const ProofCertificate& cert : certs) {
      if (!cert.holds) ++violations;
    }
  }

  emit(o, o.format == "json" ? io::certificates_json(results, spec.m, spec.alpha)
                             : io::certificates_csv(results, spec.m, spec.alpha));
  std::cerr << "certify: " << results.size() << " realization(s), " << rows
            << " certificates, " << violations
            << " violation(s); kernels=" << kernels::active_kernels().name
            << "; entropies in nats\n";
  return violations == 0 ? 0 : kExitBad;
}

int run_simulate(const Options& o) {
  const ExperimentSpec spec = make_spec(o);
  spec.validate();

  const std::vector<SweepRecord> records = entropy_growth_sweep(spec, o.threads);
  emit(o, o.format == "json" ? io::sweep_json(records) : io::sweep_csv(records));

  const std::vector<SweepAggregate> agg = aggregate_sweep(records);
  if (!agg.empty()) {
    const SweepAggregate& last = agg.back();
    std::cerr << "simulate: at t=" << last.t << " R_alpha=" << last.mean_R_alpha
              << " +- " << last.stderr_R_alpha << ", ceiling=" << last.mean_bound
              << ", q_mid=" << last.mean_q_mid
              << "; kernels=" << kernels::active_kernels().name
              << "; entropies in nats\n";
  }
  return 0;
}

int run_sprime(const Options& o) {
  const ExperimentSpec spec = make_spec(o);
  spec.validate();

  std::vector<std::vector<SPrimeReport>> reports(spec.n_realizations);
  parallel_for(spec.n_realizations, o.threads, [&](int r) {
    reports[r].reserve(spec.depth);
    for (int t = 1; t <= spec.depth; ++t) {
      reports[r].push_back(enumerate_s_prime(spec, t, r));
    }
  });

  double min_fraction = 1.0;
  for (const auto& chunk : reports) {
    for (const SPrimeReport& rep : chunk) {
      min_fraction = std::min(min_fraction, rep.fraction);
    }
  }

  emit(o, o.format == "json" ? io::sprime_json(reports) : io::sprime_csv(reports));
  std::cerr << "sprime: " << spec.n_realizations << " realization(s), t=1.."
            << spec.depth << ", worst kept fraction " << min_fraction << "\n";
  return 0;
}

int run_transport(const Options& o) {
  const ChainConfig cfg{o.N, o.d, o.seed};
  cfg.validate();
  const int site = o.charge_site == 0 ? o.N / 2 : o.charge_site;
  if (site < 1 || site > o.N) {
    throw std::domain_error("charge site out of [1, N]");
  }
  if (o.depth < 0) throw std::domain_error("depth must be >= 0");

  // One unit of charge at `site` on an otherwise empty chain.
  std::vector<LocalBasisLabel> initial(o.N, z_label(0));
  initial[site - 1] = z_label(1);

  std::vector<ProfileStats> series;
  if (o.oracle) {
    // Exact ensemble average; no sampling, stderr 0, n_samples 0.
    ChargeProfile profile;
    profile.values.assign(o.N, 0.0);
    profile.values[site - 1] = 1.0;
    for (int t = 0; t <= o.depth; ++t) {
      ProfileStats stats;
      stats.time = t;
      stats.n_samples = 0;
      stats.mean = random_walk_oracle(profile, t).values;
      stats.std_error.assign(o.N, 0.0);
      series.push_back(std::move(stats));
    }
  } else {
    series = ensemble_average_series(cfg, initial, o.depth, o.realizations,
                                     o.seed, o.threads);
  }

  emit(o, o.format == "json" ? io::transport_json(series, o.seed)
                             : io::transport_csv(series, o.seed));

  if (!o.fit_out.empty()) {
    const DecayFit fit = bulk_charge_decay(cfg, o.m, o.depth, o.realizations,
                                           o.seed, o.threads);
    io::write_text_file(o.fit_out, io::decay_fit_json(fit));
    std::cerr << "fit: slope=" << fit.slope << " +- " << fit.slope_std_error
              << " over " << fit.n_points << " points -> " << o.fit_out << "\n";
  }
  std::cerr << "transport: charge at site " << site << ", t=0.." << o.depth
            << (o.oracle ? ", exact average" : "")
            << "; kernels=" << kernels::active_kernels().name << "\n";
  return 0;
}

// Small end-to-end battery; every check is cheap enough to run on any commit.
int run_selftest(const Options& o) {
  struct Check {
    const char* name;
    bool ok;
  };
  std::vector<Check> checks;
  const std::uint64_t seed = o.seed;

  {  // sampled gates are unitary and exactly block sparse
    rng::Engine eng = rng::make_engine(seed, rng::kTestStream, 1);
    bool ok = true;
    for (int d = 2; d <= 4; ++d) {
      const ChargeConservingGate gate = sample_gate(d, eng);
      const std::vector<cplx> u = assemble_dense(gate);
      const int n = d * d;
      for (int i = 0; i < n && ok; ++i) {
        for (int j = 0; j < n && ok; ++j) {
          cplx acc = 0.0;
          for (int k = 0; k < n; ++k) acc += std::conj(u[k * n + i]) * u[k * n + j];
          const cplx want = i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
          ok = std::abs(acc - want) <= kIdentityTol;
        }
      }
    }
    checks.push_back({"gate unitarity (d=2,3,4)", ok});
  }

  {  // evolution keeps a charge eigenstate inside its sector
    const ChainConfig cfg{6, 2, seed};
    std::vector<LocalBasisLabel> labels = {z_label(0), z_label(0), z_label(1),
                                           z_label(0), z_label(1), z_label(1)};
    StateVector psi = evolve(product_state(cfg, labels),
                             sample_circuit(cfg, 4, seed), 4);
    bool ok = true;
    for (std::size_t idx = 0; idx < psi.amplitudes.size(); ++idx) {
      int q = 0;
      for (int s = 1; s <= 6; ++s) q += cfg.digit(idx, s);
      if (q != 3 && std::abs(psi.amplitudes[idx]) > kIdentityTol) ok = false;
    }
    checks.push_back({"charge sector preserved", ok});
  }

  {  // every compiled kernel variant agrees with the scalar one
    const ChainConfig cfg{8, 2, seed};
    rng::Engine eng = rng::make_engine(seed, rng::kTestStream, 2);
    const StateVector psi = random_gaussian_state(cfg, eng);
    const ChargeConservingGate gate = sample_gate(2, eng);
    const std::string before = kernels::active_kernels().name;
    kernels::select_kernels("scalar");
    const StateVector want = apply_gate(psi, gate, 3);
    bool ok = true;
    for (const std::string& name : kernels::available_kernels()) {
      kernels::select_kernels(name);
      const StateVector got = apply_gate(psi, gate, 3);
      for (std::size_t i = 0; i < got.amplitudes.size(); ++i) {
        if (std::abs(got.amplitudes[i] - want.amplitudes[i]) > 1e-13) ok = false;
      }
    }
    kernels::select_kernels(before);
    checks.push_back({"kernel variants agree", ok});
  }

  {  // the two bases are mutually unbiased
    bool ok = true;
    for (int d = 2; d <= 4; ++d) {
      for (int k = 0; k < d; ++k) {
        const std::vector<cplx> v = x_eigenstate(k, d);
        for (int j = 0; j < d; ++j) {
          if (std::abs(std::abs(v[j]) - 1.0 / std::sqrt(d)) > kIdentityTol) {
            ok = false;
          }
        }
      }
    }
    checks.push_back({"basis unbiasedness", ok});
  }

  {  // U(t,0) P agrees with V(t,0) P on a random state
    const ChainConfig cfg{6, 2, seed};
    const BrickworkCircuit circuit = sample_circuit(cfg, 3, seed + 1);
    const ModifiedCircuit mod = modify_circuit(circuit);
    rng::Engine eng = rng::make_engine(seed, rng::kTestStream, 3);
    Projected proj = project_local_zero(random_gaussian_state(cfg, eng), {3, 4});
    bool ok = true;
    for (int t = 1; t <= 3; ++t) {
      const StateVector a = evolve_range(proj.state, circuit, t - 1, t);
      const StateVector b = evolve_modified_range(proj.state, mod, t - 1, t);
      // both started from the same projected state; compare one layer at a time
      for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        if (std::abs(a.amplitudes[i] - b.amplitudes[i]) > kIdentityTol) ok = false;
      }
      proj = project_local_zero(a, {3, 4});
    }
    checks.push_back({"projected layers agree", ok});
  }

  {  // Schmidt spectrum endpoints: product state and a Bell pair
    const ChainConfig cfg{2, 2, seed};
    StateVector prod = zero_state(cfg);
    const SchmidtSpectrum sp = schmidt_spectrum(prod, 1);
    bool ok = std::abs(renyi_entropy(sp, 2.0)) <= kIdentityTol;
    StateVector bell = zero_state(cfg);
    bell.amplitudes = {cplx{1 / std::sqrt(2.0), 0}, 0, 0,
                       cplx{1 / std::sqrt(2.0), 0}};
    const SchmidtSpectrum sb = schmidt_spectrum(bell, 1);
    ok = ok && std::abs(renyi_entropy(sb, 2.0) - std::log(2.0)) <= kIdentityTol;
    checks.push_back({"entropy endpoints", ok});
  }

  {  // circuit serialization round-trips bit for bit
    const ChainConfig cfg{6, 3, seed};
    const BrickworkCircuit circuit = sample_circuit(cfg, 2, seed + 2);
    const std::string text = io::circuit_to_json(circuit);
    const std::string again = io::circuit_to_json(io::circuit_from_json(text));
    checks.push_back({"circuit round-trip", !text.empty() && text == again});
  }

  {  // a tiny certified run holds end to end
    ExperimentSpec spec;
    spec.config = ChainConfig{6, 2, seed};
    spec.depth = 4;
    spec.m = 2;
    spec.alpha = 2.0;
    spec.n_realizations = 1;
    bool ok = true;
    for (const ProofCertificate& cert : run_instance(spec, 0)) {
      if (!cert.holds) ok = false;
    }
    checks.push_back({"certificates hold", ok});
  }

  int failures = 0;
  for (const Check& c : checks) {
    std::cerr << (c.ok ? "[ok]   " : "[FAIL] ") << c.name << "\n";
    if (!c.ok) ++failures;
  }
  std::cerr << "selftest: " << checks.size() - failures << "/" << checks.size()
            << " checks passed; kernels=" << kernels::active_kernels().name << "\n";
  return failures == 0 ? 0 : kExitBad;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 1 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    args = inject_config_tokens(args);
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitUsage;
  }

  Options o;
  CLI::App app{"qudit chain simulator: charge-conserving brickwork circuits"};
  app.require_subcommand(1);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "entropy growth with the certified ceiling alongside");
  add_chain_opts(simulate, o);
  add_block_opts(simulate, o);
  add_opt(simulate, "--mode", o.mode, "block width: fixed|scaling")
      ->check(CLI::IsMember({"fixed", "scaling"}));

  CLI::App* certify = app.add_subcommand(
      "certify", "per-layer entropy-bound certificates");
  add_chain_opts(certify, o);
  add_block_opts(certify, o);
  add_opt(certify, "--dump-circuit", o.dump_circuit,
          "save the first sampled circuit as JSON");
  add_opt(certify, "--replay-circuit", o.replay_circuit,
          "certify this saved circuit instead of sampling (one realization)");

  CLI::App* sprime = app.add_subcommand(
      "sprime", "census of initial states with small deviation overlap");
  add_chain_opts(sprime, o);
  add_block_opts(sprime, o);

  CLI::App* transport = app.add_subcommand(
      "transport", "charge spreading from a single occupied site");
  add_chain_opts(transport, o);
  add_opt(transport, "--m", o.m, "largest block width for the decay fit");
  add_opt(transport, "--charge-site", o.charge_site,
          "initially occupied site; 0 = midpoint");
  transport->add_flag("--oracle", o.oracle,
                      "exact ensemble average instead of sampling");
  add_opt(transport, "--fit-out", o.fit_out,
          "also run the central-charge decay sweep; write the fit JSON here");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "quick end-to-end battery; nonzero exit on any failure");
  add_opt(selftest, "--seed", o.seed, "master seed");
  add_opt(selftest, "--kernel", o.kernel,
          "auto|scalar|avx2|avx512; default QDSIM_KERNELS env or auto");

  std::vector<const char*> argv2;
  argv2.reserve(args.size() + 1);
  argv2.push_back("qdsim");
  for (const std::string& a : args) argv2.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (!o.kernel.empty() && !kernels::select_kernels(o.kernel)) {
      std::cerr << "unknown or unsupported kernel variant '" << o.kernel
                << "'; available:";
      for (const std::string& name : kernels::available_kernels()) std::cerr << " " << name;
      std::cerr << "\n";
      return kExitUsage;
    }
    if (simulate->parsed()) return run_simulate(o);
    if (certify->parsed()) return run_certify(o);
    if (sprime->parsed()) return run_sprime(o);
    if (transport->parsed()) return run_transport(o);
    if (selftest->parsed()) return run_selftest(o);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBad;
  }
  return kExitUsage;
}
