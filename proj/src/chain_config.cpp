#include "qdsim/chain_config.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace qdsim {

std::size_t pow_sz(int base, int exp) {
  if (base < 0 || exp < 0) throw std::domain_error("pow_sz: negative input");
  std::size_t out = 1;
  const auto b = static_cast<std::size_t>(base);
  for (int i = 0; i < exp; ++i) {
    if (b != 0 && out > std::numeric_limits<std::size_t>::max() / b) {
      throw std::overflow_error("pow_sz: overflow");
    }
    out *= b;
  }
  return out;
}

void ChainConfig::validate() const {
  if (local_dim < 2) {
    throw std::domain_error("local_dim must be >= 2");
  }
  if (num_sites < 2 || num_sites % 2 != 0) {
    throw std::domain_error("num_sites must be even and >= 2");
  }
  // Amplitude cap: local_dim^num_sites <= 2^max_amp_log2.
  const std::size_t cap = std::size_t{1} << max_amp_log2;
  std::size_t dim = 1;
  for (int i = 0; i < num_sites; ++i) {
    if (dim > cap / static_cast<std::size_t>(local_dim)) {
      throw std::invalid_argument(
          "statevector too large: " + std::to_string(num_sites) + " sites of dimension " +
          std::to_string(local_dim) + " exceed 2^" + std::to_string(max_amp_log2) +
          " amplitudes");
    }
    dim *= static_cast<std::size_t>(local_dim);
  }
}

std::size_t ChainConfig::dimension() const {
  return pow_sz(local_dim, num_sites);
}

std::size_t ChainConfig::site_stride(int site) const {
  return pow_sz(local_dim, num_sites - site);
}

int ChainConfig::digit(std::size_t index, int site) const {
  return static_cast<int>((index / site_stride(site)) %
                          static_cast<std::size_t>(local_dim));
}

}  // namespace qdsim
