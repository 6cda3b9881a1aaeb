#pragma once

#include <string>
#include <vector>

#include "qdsim/circuit.hpp"
#include "qdsim/harness.hpp"
#include "qdsim/transport.hpp"

namespace qdsim::io {

// Doubles in text outputs carry 17 significant digits ("%.17g"), enough to
// round-trip exactly.
std::string format_double(double v);

// Gate-dump / replay file. Each gate record is
//   {"layer": t, "bond": b, "d": d, "blocks": [[[re, im], ...], ...]}
// with one row-major [re, im] list per total-charge sector. Serialization is
// bit-exact: load(save(c)) reproduces every amplitude of an evolution.
void save_circuit(const BrickworkCircuit& circuit, const std::string& path);
BrickworkCircuit load_circuit(const std::string& path);

std::string circuit_to_json(const BrickworkCircuit& circuit);
BrickworkCircuit circuit_from_json(const std::string& text);

// CSV payloads. Headers are always emitted; rows match the documented
// schemas. '\n' line ends.
std::string certificates_csv(const std::vector<std::vector<ProofCertificate>>& per_realization,
                             int m, double alpha);
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string transport_csv(const std::vector<ProfileStats>& series,
                          std::uint64_t seed);
std::string sprime_csv(const std::vector<std::vector<SPrimeReport>>& per_realization);

// Same payloads as JSON (arrays of row objects plus a meta block recording
// the natural-log convention).
std::string certificates_json(const std::vector<std::vector<ProofCertificate>>& per_realization,
                              int m, double alpha);
std::string sweep_json(const std::vector<SweepRecord>& records);
std::string transport_json(const std::vector<ProfileStats>& series,
                           std::uint64_t seed);
std::string sprime_json(const std::vector<std::vector<SPrimeReport>>& per_realization);

std::string decay_fit_json(const DecayFit& fit);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace qdsim::io
