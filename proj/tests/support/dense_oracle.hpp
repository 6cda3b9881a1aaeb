#pragma once

// Slow reference route for the tests: dense matrices, explicit index
// arithmetic, own sector bookkeeping. Deliberately shares no code with the
// library beyond the plain data structs, so library and oracle can only
// agree by computing the same thing.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdsim/circuit.hpp"
#include "qdsim/gates.hpp"

namespace oracle {

using qdsim::cplx;

// All (k1, k2) with k1 + k2 == s, k1 ascending.
inline std::vector<std::pair<int, int>> sector_pairs(int d, int s) {
  std::vector<std::pair<int, int>> pairs;
  for (int k1 = 0; k1 < d; ++k1) {
    const int k2 = s - k1;
    if (k2 >= 0 && k2 < d) pairs.emplace_back(k1, k2);
  }
  return pairs;
}

// Dense d^2 x d^2 gate matrix in the pair basis k1*d + k2, assembled from the
// per-sector blocks by this file's own pair enumeration.
inline std::vector<cplx> dense_gate(const qdsim::ChargeConservingGate& gate) {
  const int d = gate.local_dim;
  const int n = d * d;
  std::vector<cplx> u(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
  for (int s = 0; s <= 2 * (d - 1); ++s) {
    const auto pairs = sector_pairs(d, s);
    const qdsim::BlockMatrix& block = gate.blocks.at(s);
    if (block.dim != static_cast<int>(pairs.size())) {
      throw std::invalid_argument("block dimension does not match the sector");
    }
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      for (std::size_t c = 0; c < pairs.size(); ++c) {
        const int row = pairs[r].first * d + pairs[r].second;
        const int col = pairs[c].first * d + pairs[c].second;
        u[static_cast<std::size_t>(row) * n + col] = block.at(static_cast<int>(r), static_cast<int>(c));
      }
    }
  }
  return u;
}

// Apply a dense two-site matrix on (bond, bond+1) of a chain of num_sites
// qudits, big-endian digits, by looping over every basis index.
inline std::vector<cplx> apply_dense_gate(const std::vector<cplx>& amps,
                                          int num_sites, int d,
                                          const std::vector<cplx>& u, int bond) {
  if (bond < 1 || bond > num_sites - 1) throw std::invalid_argument("bad bond");
  const int n = d * d;
  std::size_t right = 1;
  for (int s = bond + 2; s <= num_sites; ++s) right *= d;
  std::size_t left = 1;
  for (int s = 1; s <= bond - 1; ++s) left *= d;

  std::vector<cplx> out(amps.size(), cplx{0.0, 0.0});
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t r = 0; r < right; ++r) {
      const std::size_t base = l * n * right + r;
      for (int row = 0; row < n; ++row) {
        cplx acc{0.0, 0.0};
        for (int col = 0; col < n; ++col) {
          acc += u[static_cast<std::size_t>(row) * n + col] *
                 amps[base + static_cast<std::size_t>(col) * right];
        }
        out[base + static_cast<std::size_t>(row) * right] = acc;
      }
    }
  }
  return out;
}

// One brickwork layer: odd bonds first, then even bonds.
inline std::vector<cplx> apply_layer(std::vector<cplx> amps, int num_sites,
                                     int d,
                                     const std::vector<qdsim::ChargeConservingGate>& layer) {
  for (int bond = 1; bond <= num_sites - 1; bond += 2) {
    amps = apply_dense_gate(amps, num_sites, d, dense_gate(layer.at(bond - 1)), bond);
  }
  for (int bond = 2; bond <= num_sites - 1; bond += 2) {
    amps = apply_dense_gate(amps, num_sites, d, dense_gate(layer.at(bond - 1)), bond);
  }
  return amps;
}

inline std::vector<cplx> evolve(std::vector<cplx> amps,
                                const qdsim::BrickworkCircuit& circuit, int t) {
  for (int layer = 1; layer <= t; ++layer) {
    amps = apply_layer(std::move(amps), circuit.config.num_sites,
                       circuit.config.local_dim, circuit.layers.at(layer - 1));
  }
  return amps;
}

// rho_A for A = sites 1..cut, row-major dim_a x dim_a.
inline std::vector<cplx> reduced_density(const std::vector<cplx>& amps,
                                         int d, int cut) {
  std::size_t dim_a = 1;
  for (int s = 1; s <= cut; ++s) dim_a *= d;
  const std::size_t dim_b = amps.size() / dim_a;
  std::vector<cplx> rho(dim_a * dim_a, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_a; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t b = 0; b < dim_b; ++b) {
        acc += amps[i * dim_b + b] * std::conj(amps[j * dim_b + b]);
      }
      rho[i * dim_a + j] = acc;
    }
  }
  return rho;
}

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
// descending. Good to ~1e-13 on the well-conditioned matrices used in tests.
inline std::vector<double> hermitian_eigenvalues(std::vector<cplx> h, int n) {
  auto off_norm = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        s += std::norm(h[static_cast<std::size_t>(p) * n + q]);
      }
    }
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale += std::abs(h[static_cast<std::size_t>(i) * n + i]);
  scale = std::max(scale, 1.0);

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-15 * scale; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx g = h[static_cast<std::size_t>(p) * n + q];
        if (std::abs(g) < 1e-300) continue;
        const double app = h[static_cast<std::size_t>(p) * n + p].real();
        const double aqq = h[static_cast<std::size_t>(q) * n + q].real();
        // annihilation condition: tc^2 - 2 tau tc - 1 = 0, smaller root
        const double tau = (app - aqq) / (2.0 * std::abs(g));
        const double tc = tau >= 0.0
                              ? -1.0 / (tau + std::sqrt(tau * tau + 1.0))
                              : 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(tc * tc + 1.0);
        const cplx s = tc * c * (g / std::abs(g));
        // columns p and q of H J
        for (int k = 0; k < n; ++k) {
          const cplx hkp = h[static_cast<std::size_t>(k) * n + p];
          const cplx hkq = h[static_cast<std::size_t>(k) * n + q];
          h[static_cast<std::size_t>(k) * n + p] = c * hkp - std::conj(s) * hkq;
          h[static_cast<std::size_t>(k) * n + q] = s * hkp + c * hkq;
        }
        // rows p and q of J^dagger (H J)
        for (int k = 0; k < n; ++k) {
          const cplx hpk = h[static_cast<std::size_t>(p) * n + k];
          const cplx hqk = h[static_cast<std::size_t>(q) * n + k];
          h[static_cast<std::size_t>(p) * n + k] = c * hpk - s * hqk;
          h[static_cast<std::size_t>(q) * n + k] = std::conj(s) * hpk + c * hqk;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = h[static_cast<std::size_t>(i) * n + i].real();
  std::sort(values.begin(), values.end(), [](double a, double b) { return a > b; });
  return values;
}

}  // namespace oracle
