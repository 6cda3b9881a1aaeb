#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qdsim {

using cplx = std::complex<double>;

// Default tolerances. Unitarity / exact-identity checks sit at 1e-12,
// accumulated floating-point drift checks at 1e-10.
inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kDriftTol = 1e-10;

// Schmidt values below this are treated as rounding noise.
inline constexpr double kSpectrumClip = 1e-14;

// Refuse to allocate statevectors larger than 2^30 amplitudes.
inline constexpr int kMaxAmplitudeLog2 = 30;

}  // namespace qdsim
