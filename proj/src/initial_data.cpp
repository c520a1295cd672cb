#include "couette/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "couette/dynamics.hpp"
#include "couette/errors.hpp"

namespace couette {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// Top 53 bits shifted into (0, 1].
double unit_open(std::uint64_t h) { return double((h >> 11) + 1) * 0x1p-53; }

} // namespace

SpectralField random_field(const DataSpec& spec, const GridSpec& grid) {
  if (spec.k_min < 1) throw validation_error("data.k_min: must be >= 1");
  if (spec.k_max < spec.k_min) throw validation_error("data.k_max: empty wavenumber band");
  if (spec.k_max > grid.K) throw validation_error("data.k_max: band exceeds grid K");
  if (!(spec.eta_band >= 0)) throw validation_error("data.eta_band: must be >= 0");
  if (spec.eta_band > grid.eta_max) throw validation_error("data.eta_band: band exceeds grid");
  if (!(spec.spectrum_decay >= 0)) throw validation_error("data.spectrum_decay: must be >= 0");

  SpectralField f(grid);
  const double two_pi = 2.0 * M_PI;
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t hi = splitmix64(spec.seed ^ std::uint64_t(i));
    for (int k = spec.k_min; k <= spec.k_max; ++k) {
      const std::uint64_t hk = splitmix64(hi ^ std::uint64_t(k + grid.K));
      for (int j = 0; j < grid.n_eta; ++j) {
        const double eta = grid.eta_of(j);
        if (std::abs(eta) > spec.eta_band) continue;
        const std::uint64_t h = splitmix64(hk ^ std::uint64_t(j));
        const double u1 = unit_open(h);
        const double u2 = unit_open(splitmix64(h));
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double shape =
            std::pow(1.0 + double(k) * k + eta * eta, -0.5 * spec.spectrum_decay);
        const cplx amp(r * std::cos(two_pi * u2) * shape, r * std::sin(two_pi * u2) * shape);
        f.at(i, grid.row_of(k), j) = amp;
        f.at(i, grid.row_of(-k), grid.n_eta - 1 - j) = std::conj(amp);
      }
    }
  }
  hermitian_project(f);  // no-op by construction; keeps the contract explicit
  return f;
}

void apply_constraint(SpectralField& f, double gamma) {
  if (!(gamma > 1)) throw std::domain_error("apply_constraint: gamma must be > 1");
  for (std::size_t n = 0; n < f.grid.size(); ++n)
    f.a[SOmega][n] = -good_unknown(f.a[SRho][n], f.a[STheta][n], gamma);
}

double normalize(SpectralField& f, double s, double target) {
  if (!(target > 0)) throw std::domain_error("normalize: target must be > 0");
  double worst = 0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, sobolev_norm(f.grid, f.a[i], s));
  if (!(worst > 0)) throw std::domain_error("normalize: zero field");
  const double scale = target / worst;
  for (auto& v : f.a)
    for (auto& z : v) z *= scale;
  return scale;
}

} // namespace couette
