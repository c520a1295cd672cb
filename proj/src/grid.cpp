#include "couette/grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "couette/errors.hpp"

namespace couette {

GridSpec build_grid(int K, double eta_max, double delta_eta) {
  if (K < 1) throw validation_error("grid: K must be a positive integer");
  if (!(delta_eta > 0)) throw validation_error("grid: delta_eta must be > 0");
  if (!(eta_max >= delta_eta)) throw validation_error("grid: eta_max must be >= delta_eta");
  GridSpec g;
  g.K = K;
  g.eta_max = eta_max;
  g.delta_eta = delta_eta;
  // the 1e-9 slack keeps eta_max that is an exact multiple of delta_eta inside
  g.N = static_cast<int>(std::floor(eta_max / delta_eta + 1e-9));
  g.n_k = 2 * K + 1;
  g.n_eta = 2 * g.N + 1;
  return g;
}

double sobolev_norm(const GridSpec& g, const std::vector<cplx>& f, double s) {
  double acc = 0;
  for (int i = 0; i < g.n_k; ++i) {
    int k = g.k_of(i);
    for (int j = 0; j < g.n_eta; ++j) {
      double eta = g.eta_of(j);
      const cplx& z = f[g.index(i, j)];
      double mag2 = z.real() * z.real() + z.imag() * z.imag();
      double w = (s == 0.0) ? 1.0 : std::pow(1.0 + k * k + eta * eta, s);
      acc += g.delta_eta * w * mag2;
    }
  }
  return std::sqrt(acc);
}

void hermitian_project(SpectralField& f) {
  const GridSpec& g = f.grid;
  for (auto& v : f.a) {
    for (int i = 0; i < g.n_k; ++i) {
      for (int j = 0; j < g.n_eta; ++j) {
        std::size_t idx = g.index(i, j);
        std::size_t mir = g.index(g.n_k - 1 - i, g.n_eta - 1 - j);
        if (idx > mir) continue;
        if (idx == mir) {  // center point (0,0): average is the real part
          v[idx] = cplx(v[idx].real(), 0.0);
          continue;
        }
        cplx avg = 0.5 * (v[idx] + std::conj(v[mir]));
        v[idx] = avg;
        v[mir] = std::conj(avg);
      }
    }
  }
}

void write_scalar_csv(std::ostream& os, const GridSpec& g, const std::vector<cplx>& f) {
  os << "k,eta,re,im\n";
  char buf[128];
  for (int i = 0; i < g.n_k; ++i) {
    int k = g.k_of(i);
    for (int j = 0; j < g.n_eta; ++j) {
      const cplx& z = f[g.index(i, j)];
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", k, g.eta_of(j), z.real(),
                    z.imag());
      os << buf;
    }
  }
}

std::vector<cplx> read_scalar_csv(std::istream& is, const GridSpec& g) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("k,eta,re,im", 0) != 0)
    throw validation_error("scalar csv: missing k,eta,re,im header");
  std::vector<cplx> f(g.size(), cplx(0, 0));
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int k = 0;
    double eta = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &k, &eta, &re, &im) != 4)
      throw validation_error("scalar csv: malformed row: " + line);
    int i = g.row_of(k);
    int j = static_cast<int>(std::lround(eta / g.delta_eta)) + g.N;
    if (i < 0 || i >= g.n_k || j < 0 || j >= g.n_eta)
      throw validation_error("scalar csv: point outside grid: " + line);
    f[g.index(i, j)] = cplx(re, im);
    ++rows;
  }
  if (rows != g.size()) throw validation_error("scalar csv: row count does not match grid");
  return f;
}

} // namespace couette
