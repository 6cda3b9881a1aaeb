#include "qdsim/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "qdsim/kernels.hpp"

namespace qdsim {

namespace {

void check_label(int k, int d) {
  if (d < 2) throw std::domain_error("local dimension must be >= 2");
  if (k < 0 || k >= d) throw std::domain_error("basis label out of [0, d)");
}

}  // namespace

std::vector<cplx> z_basis_state(int k, int d) {
  check_label(k, d);
  std::vector<cplx> v(d, cplx{0.0, 0.0});
  v[k] = 1.0;
  return v;
}

std::vector<cplx> x_eigenstate(int k, int d) {
  check_label(k, d);
  std::vector<cplx> v(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    const double arg = 2.0 * std::numbers::pi * j * k / d;
    v[j] = cplx{std::cos(arg), std::sin(arg)} * norm;
  }
  return v;
}

double StateVector::norm_squared() const {
  return kernels::active_kernels().norm_squared(amplitudes.data(),
                                                amplitudes.size());
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector zero_state(const ChainConfig& config) {
  config.validate();
  StateVector psi{config, std::vector<cplx>(config.dimension(), cplx{0.0, 0.0}),
                  true};
  psi.amplitudes[0] = 1.0;
  return psi;
}

StateVector product_state(const ChainConfig& config,
                          const std::vector<LocalBasisLabel>& labels) {
  config.validate();
  if (static_cast<int>(labels.size()) != config.num_sites) {
    throw std::invalid_argument("one label per site required");
  }
  const int d = config.local_dim;
  // Iterative Kronecker product, site 1 ending up most significant.
  std::vector<cplx> amps{cplx{1.0, 0.0}};
  for (const LocalBasisLabel& label : labels) {
    const std::vector<cplx> local = label.kind == LocalBasisLabel::Kind::Z
                                        ? z_basis_state(label.k, d)
                                        : x_eigenstate(label.k, d);
    std::vector<cplx> next(amps.size() * local.size());
    for (std::size_t a = 0; a < amps.size(); ++a) {
      for (int k = 0; k < d; ++k) {
        next[a * d + k] = amps[a] * local[k];
      }
    }
    amps.swap(next);
  }
  return StateVector{config, std::move(amps), true};
}

StateVector random_gaussian_state(const ChainConfig& config, rng::Engine& eng) {
  config.validate();
  StateVector psi{config, std::vector<cplx>(config.dimension()), true};
  rng::NormalSampler gauss;
  for (cplx& a : psi.amplitudes) a = cplx{gauss(eng), gauss(eng)};
  const double n = psi.norm();
  kernels::active_kernels().scale(psi.amplitudes.data(), cplx{1.0 / n, 0.0},
                                  psi.amplitudes.size());
  return psi;
}

std::vector<LocalBasisLabel> random_x_labels(const ChainConfig& config,
                                             rng::Engine& eng) {
  std::vector<LocalBasisLabel> labels(config.num_sites);
  for (LocalBasisLabel& label : labels) {
    label = x_label(rng::uniform_index(eng, config.local_dim));
  }
  return labels;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (!a.config.same_space(b.config) ||
      a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("inner_product: states live in different spaces");
  }
  return kernels::active_kernels().dot_conjugate(a.amplitudes.data(),
                                                 b.amplitudes.data(),
                                                 a.amplitudes.size());
}

double charge_expectation(const StateVector& psi, int site) {
  const int n = psi.config.num_sites;
  const int d = psi.config.local_dim;
  if (site < 1 || site > n) throw std::domain_error("site out of range");
  const std::size_t stride = psi.config.site_stride(site);
  const std::size_t block = stride * static_cast<std::size_t>(d);
  const std::size_t dim = psi.amplitudes.size();
  double acc = 0.0;
  for (std::size_t base = 0; base < dim; base += block) {
    for (int k = 1; k < d; ++k) {  // k = 0 contributes nothing
      const cplx* row = psi.amplitudes.data() + base + stride * k;
      acc += k * kernels::active_kernels().norm_squared(row, stride);
    }
  }
  return acc;
}

Projected project_local_zero(const StateVector& psi,
                             const std::vector<int>& sites) {
  const int n = psi.config.num_sites;
  std::unordered_set<int> seen;
  for (int site : sites) {
    if (site < 1 || site > n) throw std::domain_error("site out of range");
    if (!seen.insert(site).second) {
      throw std::invalid_argument("duplicate site in projection list");
    }
  }
  Projected out{psi, 0.0};
  out.state.normalized = false;
  const std::size_t dim = psi.amplitudes.size();
  for (std::size_t idx = 0; idx < dim; ++idx) {
    bool keep = true;
    for (int site : sites) {
      if (psi.config.digit(idx, site) != 0) {
        keep = false;
        break;
      }
    }
    if (!keep) out.state.amplitudes[idx] = cplx{0.0, 0.0};
  }
  out.weight = out.state.norm_squared();
  return out;
}

}  // namespace qdsim
