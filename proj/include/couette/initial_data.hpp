#pragma once

#include <cstdint>

#include "couette/grid.hpp"

namespace couette {

// Recipe for band-limited random data: Gaussian amplitudes shaped by
// <k,eta>^{-spectrum_decay}, supported on k_min <= |k| <= k_max and
// |eta| <= eta_band, zero k=0 row, Hermitian.
struct DataSpec {
  std::uint64_t seed = 42;
  int k_min = 1;
  int k_max = 8;
  double eta_band = 32.0;
  double spectrum_decay = 3.0;
  double target_norm = 1.0;
  double norm_index = 1.5;
};

// SplitMix64 scrambler; the sole randomness source, fixed so data is
// platform-independent.
std::uint64_t splitmix64(std::uint64_t x);

// Seeded field with the documented mapping per (scalar i, k > 0, column j):
//   h  = sm(sm(sm(seed ^ i) ^ (k + K)) ^ j),  u1 = ((h >> 11) + 1) * 2^-53,
//   u2 likewise from sm(h),
//   amplitude = sqrt(-2 ln u1) * (cos + i sin)(2 pi u2) * (1+k^2+eta^2)^{-beta/2}.
// Negative k mirrors by conjugation; u1, u2 lie in (0, 1] so the log is finite.
SpectralField random_field(const DataSpec& spec, const GridSpec& grid);

// Replaces omega by -(rho+theta)/gamma mode-wise; rho, alpha, theta unchanged.
// Routes through good_unknown so that Phi_in + Omega_in cancels bitwise.
void apply_constraint(SpectralField& f, double gamma);

// Scales all four scalars by one common factor so the largest of the four
// H^s norms equals target; returns the factor.
double normalize(SpectralField& f, double s, double target);

} // namespace couette
