#pragma once

// Independent route to the largest Schmidt coefficient: maximize |<a x b|psi>|
// over unit product vectors by alternating updates, with random restarts.
// Each half-update is exactly optimal given the other half, so the iteration
// climbs monotonically to a (generically global) maximum.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qdsim/common.hpp"
#include "qdsim/rng.hpp"

namespace oracle {

inline double best_product_overlap(const std::vector<qdsim::cplx>& amps,
                                   int dim_a, int dim_b, qdsim::rng::Engine& eng,
                                   int restarts = 8, int iters = 300) {
  using qdsim::cplx;
  qdsim::rng::NormalSampler normal;
  double best = 0.0;
  for (int trial = 0; trial < restarts; ++trial) {
    std::vector<cplx> b(dim_b);
    double nb = 0.0;
    for (cplx& x : b) {
      x = cplx{normal(eng), normal(eng)};
      nb += std::norm(x);
    }
    nb = std::sqrt(nb);
    for (cplx& x : b) x /= nb;

    std::vector<cplx> a(dim_a);
    double value = 0.0;
    for (int it = 0; it < iters; ++it) {
      // a <- M b, normalized; the overlap equals ||M b||
      double na = 0.0;
      for (int i = 0; i < dim_a; ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < dim_b; ++j) {
          acc += amps[static_cast<std::size_t>(i) * dim_b + j] * std::conj(b[j]);
        }
        a[i] = acc;
        na += std::norm(acc);
      }
      na = std::sqrt(na);
      if (na == 0.0) break;
      for (cplx& x : a) x /= na;

      // b <- M^dagger a, normalized
      double nb2 = 0.0;
      for (int j = 0; j < dim_b; ++j) {
        cplx acc{0.0, 0.0};
        for (int i = 0; i < dim_a; ++i) {
          acc += std::conj(amps[static_cast<std::size_t>(i) * dim_b + j]) * a[i];
        }
        b[j] = std::conj(acc);
        nb2 += std::norm(acc);
      }
      nb2 = std::sqrt(nb2);
      if (nb2 == 0.0) break;
      for (cplx& x : b) x /= nb2;

      if (nb2 - value <= 1e-14) {
        value = nb2;
        break;
      }
      value = nb2;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace oracle
