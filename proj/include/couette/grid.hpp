#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace couette {

using cplx = std::complex<double>;

// Truncated frequency lattice for T x R. Integer wavenumbers k in {-K..K};
// the continuous frequency eta is sampled on delta_eta*Z with |eta| <= eta_max,
// which amounts to periodizing y with period 2*pi/delta_eta. The dynamics are
// diagonal in (k,eta), so truncation only selects which modes exist.
struct GridSpec {
  int K = 0;
  double eta_max = 0;
  double delta_eta = 0;
  int N = 0;      // eta half-width in lattice units; 2N+1 columns
  int n_k = 0;    // 2K+1
  int n_eta = 0;  // 2N+1

  int row_of(int k) const { return k + K; }
  int k_of(int i) const { return i - K; }
  double eta_of(int j) const { return (j - N) * delta_eta; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_eta + j; }
  std::size_t size() const { return static_cast<std::size_t>(n_k) * n_eta; }
};

GridSpec build_grid(int K, double eta_max, double delta_eta);

enum Scalar { SRho = 0, SAlpha = 1, SOmega = 2, STheta = 3 };

// Four complex scalars on the lattice, stored in ascending order (k outer,
// eta inner). Physical fields are real, so admissible data is Hermitian:
// f(-k,-eta) = conj f(k,eta). Admissible data also has a zero k=0 row; any
// nonzero k=0 dynamics belong to the zero-mode module.
struct SpectralField {
  GridSpec grid;
  std::array<std::vector<cplx>, 4> a;

  explicit SpectralField(const GridSpec& g) : grid(g) {
    for (auto& v : a) v.assign(g.size(), cplx(0, 0));
  }
  cplx& at(int scalar, int i, int j) { return a[scalar][grid.index(i, j)]; }
  const cplx& at(int scalar, int i, int j) const { return a[scalar][grid.index(i, j)]; }
};

// sqrt( sum_k sum_eta delta_eta (1+k^2+eta^2)^s |f|^2 ).
// Summation runs in fixed ascending (k,eta) order for bit reproducibility.
double sobolev_norm(const GridSpec& g, const std::vector<cplx>& f, double s);

// Replaces f(k,eta) and f(-k,-eta) by their Hermitian-symmetric average,
// for every scalar. Idempotent to the bit.
void hermitian_project(SpectralField& f);

// One CSV per scalar, header k,eta,re,im, ascending order, 17 significant digits.
void write_scalar_csv(std::ostream& os, const GridSpec& g, const std::vector<cplx>& f);
std::vector<cplx> read_scalar_csv(std::istream& is, const GridSpec& g);

} // namespace couette
