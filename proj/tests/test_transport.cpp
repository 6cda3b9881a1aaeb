#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qdsim/rng.hpp"
#include "qdsim/state.hpp"
#include "qdsim/transport.hpp"

using namespace qdsim;

TEST_CASE("charge profile reads product states exactly") {
  const ChainConfig cfg{4, 3, 0};
  const StateVector psi =
      product_state(cfg, {z_label(2), z_label(0), z_label(1), z_label(0)});
  const ChargeProfile prof = charge_profile(psi);
  REQUIRE(prof.values.size() == 4);
  CHECK(prof.values[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(prof.values[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(prof.values[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(prof.values[3] == doctest::Approx(0.0).epsilon(1e-14));

  StateVector unnorm = psi;
  unnorm.normalized = false;
  CHECK_THROWS_AS(charge_profile(unnorm), std::invalid_argument);
}

TEST_CASE("one averaged layer does the two sublayer passes in order") {
  ChargeProfile prof;
  prof.values = {1.0, 0.0, 0.0, 0.0};
  const ChargeProfile out = random_walk_oracle(prof, 1);
  // odd bonds (1,2) and (3,4) average to [.5, .5, 0, 0]; even bond (2,3)
  // averages to [.5, .25, .25, 0]
  REQUIRE(out.values.size() == 4);
  CHECK(out.values[0] == doctest::Approx(0.50).epsilon(1e-14));
  CHECK(out.values[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(out.values[2] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(out.values[3] == doctest::Approx(0.00).epsilon(1e-14));
  CHECK(out.time == 1);
}

TEST_CASE("the averaged walk conserves charge and flattens out") {
  ChargeProfile prof;
  prof.values = {0.0, 0.0, 3.0, 0.0, 1.0, 0.0};
  const double total = 4.0;
  for (int t : {1, 2, 5, 40}) {
    const ChargeProfile out = random_walk_oracle(prof, t);
    double sum = 0.0;
    for (double q : out.values) sum += q;
    CHECK(sum == doctest::Approx(total).epsilon(1e-12));
  }
  const ChargeProfile flat = random_walk_oracle(prof, 400);
  for (double q : flat.values) {
    CHECK(q == doctest::Approx(total / 6.0).epsilon(1e-6));
  }
}

TEST_CASE("monte carlo transport agrees with the averaged walk") {
  const ChainConfig cfg{6, 2, 71};
  std::vector<LocalBasisLabel> initial(6, z_label(0));
  initial[2] = z_label(1);  // site 3

  const int t_max = 4;
  const int n = 600;
  const std::vector<ProfileStats> series =
      ensemble_average_series(cfg, initial, t_max, n, 71);
  REQUIRE(series.size() == t_max + 1);

  ChargeProfile prof;
  prof.values = {0, 0, 1, 0, 0, 0};
  for (int t = 0; t <= t_max; ++t) {
    const ChargeProfile want = random_walk_oracle(prof, t);
    REQUIRE(series[t].time == t);
    REQUIRE(series[t].n_samples == n);
    for (int i = 0; i < 6; ++i) {
      const double tol = std::max(4.0 * series[t].std_error[i], 0.03);
      CHECK(std::abs(series[t].mean[i] - want.values[i]) <= tol);
    }
  }
  // t = 0 is the initial profile with no sampling noise
  for (int i = 0; i < 6; ++i) {
    CHECK(series[0].mean[i] == doctest::Approx(prof.values[i]).epsilon(1e-12));
    CHECK(series[0].std_error[i] <= 1e-12);
  }
}

TEST_CASE("transport sampling is deterministic, threads included") {
  const ChainConfig cfg{6, 2, 72};
  std::vector<LocalBasisLabel> initial(6, z_label(0));
  initial[3] = z_label(1);
  const auto a = ensemble_average_series(cfg, initial, 3, 40, 72, 1);
  const auto b = ensemble_average_series(cfg, initial, 3, 40, 72, 1);
  const auto c = ensemble_average_series(cfg, initial, 3, 40, 72, 3);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (int i = 0; i < 6; ++i) {
      CHECK(a[t].mean[i] == b[t].mean[i]);
      CHECK(a[t].mean[i] == c[t].mean[i]);
      CHECK(a[t].std_error[i] == c[t].std_error[i]);
    }
  }
}

TEST_CASE("decay fit recovers exact synthetic data") {
  std::vector<DecaySample> samples;
  // gentle enough that every point stays above the 1e-8 noise floor
  const double slope = 0.25;
  const double intercept = -0.5;
  for (int m = 2; m <= 8; m += 2) {
    for (int t = 1; t <= 6; ++t) {
      DecaySample s;
      s.m = m;
      s.t = t;
      const double x = static_cast<double>(m) * m / t;
      s.q = std::exp(intercept - slope * x);
      samples.push_back(s);
    }
  }
  const DecayFit fit = fit_decay(samples);
  CHECK(fit.n_points == static_cast<int>(samples.size()));
  CHECK(std::abs(fit.slope - slope) < 1e-9);
  CHECK(std::abs(fit.intercept - intercept) < 1e-9);
  CHECK(fit.residual < 1e-9);
  CHECK(fit.slope_std_error < 1e-9);
}

TEST_CASE("decay fit drops the noise floor and requires three points") {
  std::vector<DecaySample> samples;
  for (int i = 0; i < 5; ++i) {
    DecaySample s;
    s.m = 2;
    s.t = i + 1;
    s.q = 0.5;
    samples.push_back(s);
  }
  samples[4].q = 1e-12;  // below the floor, must be excluded
  const DecayFit fit = fit_decay(samples);
  CHECK(fit.n_points == 4);

  std::vector<DecaySample> few(samples.begin(), samples.begin() + 2);
  CHECK_THROWS_AS(fit_decay(few), std::invalid_argument);
}

TEST_CASE("classical decay sweep feeds plausible values") {
  const std::vector<DecaySample> series = oracle_decay_series(10, 2, 4, 6);
  REQUIRE(!series.empty());
  for (const DecaySample& s : series) {
    CHECK(s.q >= 0.0);
    CHECK(s.q <= 1.0);  // d - 1 with d = 2
    CHECK(s.m >= 2);
    CHECK(s.t >= 1);
  }
  // wider empty blocks keep the center emptier at equal t
  double q_m2 = -1.0;
  double q_m4 = -1.0;
  for (const DecaySample& s : series) {
    if (s.t == 4 && s.m == 2) q_m2 = s.q;
    if (s.t == 4 && s.m == 4) q_m4 = s.q;
  }
  REQUIRE(q_m2 >= 0.0);
  REQUIRE(q_m4 >= 0.0);
  CHECK(q_m4 <= q_m2 + 1e-12);
}

TEST_CASE("sampled decay sweep runs at desk scale") {
  const ChainConfig cfg{6, 2, 73};
  const DecayFit fit = bulk_charge_decay(cfg, 4, 3, 30, 73);
  CHECK(fit.n_points > 0);
  CHECK(std::isfinite(fit.slope));
  for (const DecaySample& s : fit.samples) {
    CHECK(s.q >= -1e-12);
    CHECK(s.q <= 1.0 + 1e-12);
  }
}

TEST_CASE("local charge bounds the weight outside the local vacuum") {
  SUBCASE("random states") {
    for (int d : {2, 3}) {
      const ChainConfig cfg{4, d, 74};
      rng::Engine eng = rng::make_engine(74, rng::kTestStream, d);
      for (int rep = 0; rep < 50; ++rep) {
        const StateVector psi = random_gaussian_state(cfg, eng);
        for (int site = 1; site <= 4; ++site) {
          const ConditionCheck chk = condition_inequality_check(psi, site);
          CHECK(chk.holds);
          CHECK(chk.lhs <= chk.rhs + 1e-10);
        }
      }
    }
  }
  SUBCASE("equality on basis states") {
    const ChainConfig cfg{4, 2, 0};
    const StateVector one =
        product_state(cfg, {z_label(0), z_label(1), z_label(0), z_label(0)});
    const ConditionCheck at2 = condition_inequality_check(one, 2);
    CHECK(at2.lhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at2.rhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(at2.holds);
    const ConditionCheck at1 = condition_inequality_check(one, 1);
    CHECK(at1.lhs == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(at1.rhs == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(at1.holds);
  }
  SUBCASE("strict gap for d = 3") {
    // |2> puts lhs = 1 but rhs = 2: the bound is not tight site by site
    const ChainConfig cfg{4, 3, 0};
    const StateVector two =
        product_state(cfg, {z_label(2), z_label(0), z_label(0), z_label(0)});
    const ConditionCheck chk = condition_inequality_check(two, 1);
    CHECK(chk.lhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chk.rhs == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(chk.holds);
  }
}
