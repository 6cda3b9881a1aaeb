#include "qdsim/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdsim::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

json gate_to_json(const ChargeConservingGate& gate, int layer, int bond) {
  json blocks = json::array();
  for (const BlockMatrix& block : gate.blocks) {
    json entries = json::array();
    for (const cplx& z : block.a) {
      entries.push_back(json::array({z.real(), z.imag()}));
    }
    blocks.push_back(std::move(entries));
  }
  return json{{"layer", layer}, {"bond", bond}, {"d", gate.local_dim},
              {"blocks", std::move(blocks)}};
}

ChargeConservingGate gate_from_json(const json& record) {
  const int d = record.at("d").get<int>();
  const auto sectors = sector_decomposition(d);
  const json& blocks = record.at("blocks");
  if (blocks.size() != sectors.size()) {
    throw std::invalid_argument("gate record: wrong sector count");
  }
  ChargeConservingGate gate{d, {}};
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const int dim = sectors[s].dim();
    const json& entries = blocks[s];
    if (static_cast<int>(entries.size()) != dim * dim) {
      throw std::invalid_argument("gate record: wrong block size");
    }
    BlockMatrix block = BlockMatrix::zero(dim);
    for (int i = 0; i < dim * dim; ++i) {
      block.a[i] = cplx{entries[i][0].get<double>(), entries[i][1].get<double>()};
    }
    gate.blocks.push_back(std::move(block));
  }
  return gate;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' line ends everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

std::string circuit_to_json(const BrickworkCircuit& circuit) {
  json gates = json::array();
  for (int t = 1; t <= circuit.depth; ++t) {
    for (int bond = 1; bond <= circuit.config.num_sites - 1; ++bond) {
      gates.push_back(gate_to_json(circuit.layers[t - 1][bond - 1], t, bond));
    }
  }
  const json doc{{"format", "qdsim-circuit"},
                 {"version", 1},
                 {"num_sites", circuit.config.num_sites},
                 {"local_dim", circuit.config.local_dim},
                 {"depth", circuit.depth},
                 {"seed", circuit.config.seed},
                 {"gates", std::move(gates)}};
  return doc.dump(2);
}

BrickworkCircuit circuit_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.value("format", "") != "qdsim-circuit") {
    throw std::invalid_argument("not a circuit file");
  }
  BrickworkCircuit circuit;
  circuit.config.num_sites = doc.at("num_sites").get<int>();
  circuit.config.local_dim = doc.at("local_dim").get<int>();
  circuit.config.seed = doc.value("seed", std::uint64_t{0});
  circuit.depth = doc.at("depth").get<int>();
  circuit.config.validate();
  if (circuit.depth < 0) throw std::invalid_argument("negative depth");
  const int bonds = circuit.config.num_sites - 1;
  circuit.layers.assign(circuit.depth,
                        std::vector<ChargeConservingGate>(bonds));
  std::vector<std::vector<bool>> seen(circuit.depth,
                                      std::vector<bool>(bonds, false));
  for (const json& record : doc.at("gates")) {
    const int layer = record.at("layer").get<int>();
    const int bond = record.at("bond").get<int>();
    if (layer < 1 || layer > circuit.depth || bond < 1 || bond > bonds) {
      throw std::invalid_argument("gate record out of range");
    }
    ChargeConservingGate gate = gate_from_json(record);
    if (gate.local_dim != circuit.config.local_dim) {
      throw std::invalid_argument("gate record has wrong local dimension");
    }
    circuit.layers[layer - 1][bond - 1] = std::move(gate);
    seen[layer - 1][bond - 1] = true;
  }
  for (int t = 0; t < circuit.depth; ++t) {
    for (int b = 0; b < bonds; ++b) {
      if (!seen[t][b]) throw std::invalid_argument("circuit file is missing gates");
    }
  }
  return circuit;
}

void save_circuit(const BrickworkCircuit& circuit, const std::string& path) {
  write_text_file(path, circuit_to_json(circuit));
}

BrickworkCircuit load_circuit(const std::string& path) {
  return circuit_from_json(read_text_file(path));
}

std::string certificates_csv(
    const std::vector<std::vector<ProofCertificate>>& per_realization, int m,
    double alpha) {
  std::ostringstream out;
  out << "realization,t,m,alpha,overlap0,overlap_t,delta_norm,"
         "v_overlap,lambda1,R_alpha,R_inf,bound,holds\n";
  for (std::size_t r = 0; r < per_realization.size(); ++r) {
    for (const ProofCertificate& c : per_realization[r]) {
      out << r << ',' << c.t << ',' << m << ',' << format_double(alpha) << ','
          << format_double(c.overlap0) << ',' << format_double(c.overlap_t)
          << ',' << format_double(c.delta_norm) << ','
          << format_double(c.v_overlap) << ',' << format_double(c.lambda1)
          << ',' << format_double(c.R_alpha) << ',' << format_double(c.R_inf)
          << ',' << format_double(c.bound) << ',' << (c.holds ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << "realization,t,R_alpha,R_inf,bound,q_mid\n";
  for (const SweepRecord& rec : records) {
    out << rec.realization << ',' << rec.t << ',' << format_double(rec.R_alpha)
        << ',' << format_double(rec.R_inf) << ',' << format_double(rec.bound)
        << ',' << format_double(rec.q_mid) << '\n';
  }
  return out.str();
}

std::string transport_csv(const std::vector<ProfileStats>& series,
                          std::uint64_t seed) {
  std::ostringstream out;
  out << "t,site,mean_q,stderr,n_samples,seed\n";
  for (const ProfileStats& stats : series) {
    for (std::size_t i = 0; i < stats.mean.size(); ++i) {
      out << stats.time << ',' << (i + 1) << ',' << format_double(stats.mean[i])
          << ',' << format_double(stats.std_error[i]) << ',' << stats.n_samples
          << ',' << seed << '\n';
    }
  }
  return out.str();
}

std::string sprime_csv(
    const std::vector<std::vector<SPrimeReport>>& per_realization) {
  std::ostringstream out;
  out << "realization,t,m,p_value,threshold,fraction,sum_sq_overlap,"
         "delta_norm_sq,set_size,kept\n";
  for (std::size_t r = 0; r < per_realization.size(); ++r) {
    for (const SPrimeReport& rep : per_realization[r]) {
      out << r << ',' << rep.t << ',' << rep.m << ','
          << format_double(rep.p_value) << ',' << format_double(rep.threshold)
          << ',' << format_double(rep.fraction) << ','
          << format_double(rep.sum_sq_overlap) << ','
          << format_double(rep.delta_norm_sq) << ',' << rep.set_size << ','
          << rep.kept << '\n';
    }
  }
  return out.str();
}

namespace {

json meta_block() { return json{{"log_base", "e"}}; }

}  // namespace

std::string certificates_json(
    const std::vector<std::vector<ProofCertificate>>& per_realization, int m,
    double alpha) {
  json rows = json::array();
  for (std::size_t r = 0; r < per_realization.size(); ++r) {
    for (const ProofCertificate& c : per_realization[r]) {
      rows.push_back(json{{"realization", r},
                          {"t", c.t},
                          {"m", m},
                          {"alpha", alpha},
                          {"overlap0", c.overlap0},
                          {"overlap_t", c.overlap_t},
                          {"delta_norm", c.delta_norm},
                          {"v_overlap", c.v_overlap},
                          {"lambda1", c.lambda1},
                          {"Lambda1", c.Lambda1},
                          {"R_alpha", c.R_alpha},
                          {"R_inf", c.R_inf},
                          {"bound", c.bound},
                          {"holds", c.holds}});
    }
  }
  return json{{"meta", meta_block()}, {"rows", std::move(rows)}}.dump(2);
}

std::string sweep_json(const std::vector<SweepRecord>& records) {
  json rows = json::array();
  for (const SweepRecord& rec : records) {
    rows.push_back(json{{"realization", rec.realization},
                        {"t", rec.t},
                        {"R_alpha", rec.R_alpha},
                        {"R_inf", rec.R_inf},
                        {"bound", rec.bound},
                        {"q_mid", rec.q_mid}});
  }
  return json{{"meta", meta_block()}, {"rows", std::move(rows)}}.dump(2);
}

std::string transport_json(const std::vector<ProfileStats>& series,
                           std::uint64_t seed) {
  json rows = json::array();
  for (const ProfileStats& stats : series) {
    for (std::size_t i = 0; i < stats.mean.size(); ++i) {
      rows.push_back(json{{"t", stats.time},
                          {"site", i + 1},
                          {"mean_q", stats.mean[i]},
                          {"stderr", stats.std_error[i]},
                          {"n_samples", stats.n_samples},
                          {"seed", seed}});
    }
  }
  return json{{"meta", meta_block()}, {"rows", std::move(rows)}}.dump(2);
}

std::string sprime_json(
    const std::vector<std::vector<SPrimeReport>>& per_realization) {
  json rows = json::array();
  for (std::size_t r = 0; r < per_realization.size(); ++r) {
    for (const SPrimeReport& rep : per_realization[r]) {
      rows.push_back(json{{"realization", r},
                          {"t", rep.t},
                          {"m", rep.m},
                          {"p_value", rep.p_value},
                          {"threshold", rep.threshold},
                          {"fraction", rep.fraction},
                          {"sum_sq_overlap", rep.sum_sq_overlap},
                          {"delta_norm_sq", rep.delta_norm_sq},
                          {"set_size", rep.set_size},
                          {"kept", rep.kept}});
    }
  }
  return json{{"meta", meta_block()}, {"rows", std::move(rows)}}.dump(2);
}

std::string decay_fit_json(const DecayFit& fit) {
  return json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"residual", fit.residual},
              {"n_points", fit.n_points},
              {"slope_std_error", fit.slope_std_error}}
      .dump(2);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qdsim::io
