#include <doctest.h>

#include <cmath>
#include <vector>

#include "qdsim/rng.hpp"

using namespace qdsim;

TEST_CASE("derived seeds separate streams and keys") {
  const std::uint64_t s = 42;
  CHECK(rng::derive_seed(s, rng::kGateStream, 1, 2) ==
        rng::derive_seed(s, rng::kGateStream, 1, 2));
  CHECK(rng::derive_seed(s, rng::kGateStream, 1, 2) !=
        rng::derive_seed(s, rng::kGateStream, 2, 1));
  CHECK(rng::derive_seed(s, rng::kGateStream, 1, 2) !=
        rng::derive_seed(s, rng::kCircuitStream, 1, 2));
  CHECK(rng::derive_seed(s, rng::kGateStream) !=
        rng::derive_seed(s + 1, rng::kGateStream));
}

TEST_CASE("engines from equal keys replay the same sequence") {
  rng::Engine a = rng::make_engine(7, rng::kTestStream, 3, 4);
  rng::Engine b = rng::make_engine(7, rng::kTestStream, 3, 4);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
}

TEST_CASE("uniform01 stays in [0,1) and is roughly centered") {
  rng::Engine eng = rng::make_engine(1, rng::kTestStream);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng::uniform01(eng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.02);
}

TEST_CASE("uniform_index covers its range") {
  rng::Engine eng = rng::make_engine(2, rng::kTestStream);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const int k = rng::uniform_index(eng, 5);
    REQUIRE(k >= 0);
    REQUIRE(k < 5);
    ++counts[k];
  }
  for (int c : counts) CHECK(c > 800);  // ~1000 each
}

TEST_CASE("normal sampler has the right first two moments") {
  rng::Engine eng = rng::make_engine(3, rng::kTestStream);
  rng::NormalSampler normal;
  const int n = 50000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = normal(eng);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);      // stderr ~ 0.0045
  CHECK(std::abs(var - 1.0) < 0.03); // stderr ~ 0.006
}
