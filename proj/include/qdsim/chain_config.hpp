#pragma once

#include <cstddef>
#include <cstdint>

#include "qdsim/common.hpp"

namespace qdsim {

// d^exp with overflow guard; throws std::overflow_error.
std::size_t pow_sz(int base, int exp);

// A chain of num_sites qudits with local dimension local_dim. Sites are
// 1-based; amplitude indices are big-endian in the site digits (site 1 is the
// most significant digit).
struct ChainConfig {
  int num_sites = 0;             // even, >= 2
  int local_dim = 2;             // >= 2
  std::uint64_t seed = 0;
  int max_amp_log2 = kMaxAmplitudeLog2;

  // Throws std::invalid_argument / std::domain_error on bad values,
  // including num_sites * log2(local_dim) above the amplitude cap.
  void validate() const;

  std::size_t dimension() const;              // local_dim^num_sites
  std::size_t site_stride(int site) const;    // local_dim^(num_sites - site)
  int digit(std::size_t index, int site) const;

  // Two configs describe the same Hilbert space (seed is bookkeeping).
  bool same_space(const ChainConfig& other) const {
    return num_sites == other.num_sites && local_dim == other.local_dim;
  }
};

}  // namespace qdsim
