#include "qdsim/entanglement.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdsim {

namespace {

// alpha values this close to 1 evaluate the von Neumann limit instead of the
// numerically hollow 0/0 form.
constexpr double kAlphaOneWindow = 1e-6;

double log_scale(double log_base) {
  if (log_base == 0.0) return 1.0;  // natural log
  if (log_base <= 0.0 || log_base == 1.0) {
    throw std::domain_error("log base must be positive and != 1");
  }
  return 1.0 / std::log(log_base);
}

void check_nonempty(const SchmidtSpectrum& spec) {
  if (spec.values.empty()) {
    throw std::invalid_argument("empty Schmidt spectrum");
  }
}

}  // namespace

SchmidtSpectrum schmidt_spectrum(const StateVector& psi, int cut, double clip) {
  const int n = psi.config.num_sites;
  if (cut < 1 || cut > n - 1) throw std::domain_error("cut out of range");
  const std::size_t rows = pow_sz(psi.config.local_dim, cut);
  const std::size_t cols = pow_sz(psi.config.local_dim, n - cut);
  // Big-endian digit order makes the amplitude array exactly the row-major
  // rows x cols matrix of the bipartition.
  using RowMajor =
      Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> matrix(psi.amplitudes.data(),
                                    static_cast<Eigen::Index>(rows),
                                    static_cast<Eigen::Index>(cols));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
  const Eigen::VectorXd& sigma = svd.singularValues();

  SchmidtSpectrum spec{{}, cut, 0.0};
  spec.values.reserve(static_cast<std::size_t>(sigma.size()));
  double kept_mass = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double v = sigma[i] * sigma[i];
    if (v < clip) {
      spec.clipped_mass += v;
    } else {
      spec.values.push_back(v);
      kept_mass += v;
    }
  }
  if (spec.values.empty()) {
    throw std::invalid_argument("state has no Schmidt weight above the clip");
  }
  // Singular values come back descending; renormalize what survived.
  for (double& v : spec.values) v /= kept_mass;
  return spec;
}

double renyi_entropy(const SchmidtSpectrum& spec, double alpha,
                     double log_base) {
  check_nonempty(spec);
  if (alpha <= 0.0) throw std::domain_error("Renyi index must be > 0");
  if (std::abs(alpha - 1.0) <= kAlphaOneWindow) {
    return von_neumann_entropy(spec, log_base);
  }
  const double scale = log_scale(log_base);
  // Factor out the largest value so alpha >> 1 cannot underflow everything:
  // log sum v_i^a = a log v1 + log sum (v_i/v1)^a.
  const double v1 = spec.values.front();
  double tail = 0.0;
  for (double v : spec.values) {
    if (v > 0.0) tail += std::exp(alpha * (std::log(v) - std::log(v1)));
  }
  const double log_sum = alpha * std::log(v1) + std::log(tail);
  return scale * log_sum / (1.0 - alpha);
}

double min_entropy(const SchmidtSpectrum& spec, double log_base) {
  check_nonempty(spec);
  return -log_scale(log_base) * std::log(spec.values.front());
}

double von_neumann_entropy(const SchmidtSpectrum& spec, double log_base) {
  check_nonempty(spec);
  double acc = 0.0;
  for (double v : spec.values) {
    if (v > 0.0) acc -= v * std::log(v);
  }
  return log_scale(log_base) * acc;
}

SandwichCheck check_entropy_sandwich(const SchmidtSpectrum& spec, double alpha,
                                     double tol) {
  if (alpha <= 1.0) throw std::domain_error("the sandwich needs alpha > 1");
  SandwichCheck out;
  out.lhs = min_entropy(spec);
  out.mid = renyi_entropy(spec, alpha);
  out.rhs = alpha / (alpha - 1.0) * out.lhs;
  out.holds = out.lhs <= out.mid + tol && out.mid <= out.rhs + tol;
  return out;
}

double eckart_young_overlap(const SchmidtSpectrum& spec, int rank) {
  check_nonempty(spec);
  if (rank < 1) throw std::domain_error("rank must be >= 1");
  const std::size_t take =
      std::min(spec.values.size(), static_cast<std::size_t>(rank));
  double acc = 0.0;
  for (std::size_t i = 0; i < take; ++i) acc += spec.values[i];
  return std::sqrt(acc);
}

}  // namespace qdsim
