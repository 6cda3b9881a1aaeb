#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qdsim::rng {

using Engine = std::mt19937_64;

// Stream tags keep independently derived engines from colliding when they
// share a base seed.
inline constexpr std::uint64_t kGateStream = 0x67617465u;        // gate draws
inline constexpr std::uint64_t kCircuitStream = 0x63697263u;     // per-realization circuits
inline constexpr std::uint64_t kLabelStream = 0x6c61626cu;       // initial product labels
inline constexpr std::uint64_t kStateStream = 0x73746174u;       // dense random states
inline constexpr std::uint64_t kTestStream = 0x74657374u;        // test-local draws

// splitmix64 finalizer; good 64-bit mixing for counter-based seeding.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Key for the stream identified by (seed, stream, a, b). Chained mixing so
// nearby tuples land far apart.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t k = mix(seed ^ 0x243f6a8885a308d3ull);
  k = mix(k ^ stream);
  k = mix(k ^ a);
  k = mix(k ^ b);
  return k;
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t a = 0, std::uint64_t b = 0) {
  return Engine(derive_seed(seed, stream, a, b));
}

// Uniform double in [0, 1) with 53 random bits. Hand-rolled instead of
// std::uniform_real_distribution so the mapping from engine output to values
// is pinned by this code, not by the standard library in use.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n). Modulo bias is ~n / 2^64, irrelevant for the small
// n used here.
inline int uniform_index(Engine& eng, int n) {
  return static_cast<int>(eng() % static_cast<std::uint64_t>(n));
}

// Standard normal via Box-Muller; caches the second value of each pair.
class NormalSampler {
 public:
  double operator()(Engine& eng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01(eng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qdsim::rng
