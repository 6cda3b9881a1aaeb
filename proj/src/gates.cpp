#include "qdsim/gates.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

#include "qdsim/kernels.hpp"

namespace qdsim {

std::vector<ChargeSector> sector_decomposition(int d) {
  if (d < 2) throw std::domain_error("local dimension must be >= 2");
  std::vector<ChargeSector> sectors;
  sectors.reserve(2 * d - 1);
  for (int s = 0; s <= 2 * (d - 1); ++s) {
    ChargeSector sector{s, {}};
    const int lo = std::max(0, s - (d - 1));
    const int hi = std::min(d - 1, s);
    for (int k1 = lo; k1 <= hi; ++k1) {
      sector.basis.emplace_back(k1, s - k1);
    }
    sectors.push_back(std::move(sector));
  }
  return sectors;
}

BlockMatrix BlockMatrix::identity(int n) {
  BlockMatrix b = zero(n);
  for (int i = 0; i < n; ++i) b.at(i, i) = 1.0;
  return b;
}

BlockMatrix haar_unitary(int n, rng::Engine& eng) {
  if (n < 1) throw std::domain_error("unitary dimension must be >= 1");
  Eigen::MatrixXcd ginibre(n, n);
  rng::NormalSampler gauss;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      ginibre(r, c) = cplx{gauss(eng), gauss(eng)};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: scale column j by the phase of r_jj. Without this the QR
  // output is unitary but biased toward the factorization's phase convention.
  for (int j = 0; j < n; ++j) {
    const cplx rjj = r(j, j);
    const double mod = std::abs(rjj);
    const cplx phase = mod > 0.0 ? rjj / mod : cplx{1.0, 0.0};
    q.col(j) *= phase;
  }
  BlockMatrix out = BlockMatrix::zero(n);
  for (int rr = 0; rr < n; ++rr) {
    for (int cc = 0; cc < n; ++cc) out.at(rr, cc) = q(rr, cc);
  }
  return out;
}

ChargeConservingGate sample_gate(int d, rng::Engine& eng) {
  ChargeConservingGate gate{d, {}};
  for (const ChargeSector& sector : sector_decomposition(d)) {
    gate.blocks.push_back(haar_unitary(sector.dim(), eng));
  }
  return gate;
}

ChargeConservingGate identity_gate(int d) {
  ChargeConservingGate gate{d, {}};
  for (const ChargeSector& sector : sector_decomposition(d)) {
    gate.blocks.push_back(BlockMatrix::identity(sector.dim()));
  }
  return gate;
}

std::vector<cplx> assemble_dense(const ChargeConservingGate& gate) {
  const int d = gate.local_dim;
  const std::size_t dim2 = static_cast<std::size_t>(d) * d;
  std::vector<cplx> dense(dim2 * dim2, cplx{0.0, 0.0});
  const auto sectors = sector_decomposition(d);
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto& basis = sectors[s].basis;
    const BlockMatrix& block = gate.blocks[s];
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const std::size_t row = static_cast<std::size_t>(basis[r].first) * d +
                              static_cast<std::size_t>(basis[r].second);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const std::size_t col = static_cast<std::size_t>(basis[c].first) * d +
                                static_cast<std::size_t>(basis[c].second);
        dense[row * dim2 + col] = block.at(static_cast<int>(r), static_cast<int>(c));
      }
    }
  }
  return dense;
}

cplx gate_phase_00(const ChargeConservingGate& gate) {
  return gate.blocks.at(0).a.at(0);
}

void apply_gate_in_place(StateVector& psi, const ChargeConservingGate& gate,
                         int bond, cplx* scratch, cplx** rows) {
  const ChainConfig& cfg = psi.config;
  const int d = cfg.local_dim;
  const int n = cfg.num_sites;
  if (gate.local_dim != d) {
    throw std::invalid_argument("gate dimension does not match the chain");
  }
  if (bond < 1 || bond > n - 1) throw std::domain_error("bond out of range");
  const std::size_t prefixes = pow_sz(d, bond - 1);
  const std::size_t run = pow_sz(d, n - bond - 1);
  const std::size_t fiber = static_cast<std::size_t>(d) * d * run;
  const auto sectors = sector_decomposition(d);
  const auto& kern = kernels::active_kernels();
  cplx* amps = psi.amplitudes.data();
  for (std::size_t p = 0; p < prefixes; ++p) {
    cplx* base = amps + p * fiber;
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      const auto& basis = sectors[s].basis;
      const int dim = static_cast<int>(basis.size());
      for (int j = 0; j < dim; ++j) {
        const std::size_t pair =
            static_cast<std::size_t>(basis[j].first) * d + basis[j].second;
        rows[j] = base + pair * run;
      }
      kern.apply_matrix_rows(gate.blocks[s].a.data(), dim, rows, run, scratch);
    }
  }
}

StateVector apply_gate(const StateVector& psi, const ChargeConservingGate& gate,
                       int bond) {
  StateVector out = psi;
  std::vector<cplx> scratch(static_cast<std::size_t>(psi.config.local_dim) *
                            kernels::kApplyScratchPerDim);
  std::vector<cplx*> rows(psi.config.local_dim);
  apply_gate_in_place(out, gate, bond, scratch.data(), rows.data());
  return out;
}

}  // namespace qdsim
