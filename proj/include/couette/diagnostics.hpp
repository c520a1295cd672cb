#pragma once

#include "couette/dynamics.hpp"
#include "couette/grid.hpp"

namespace couette {

// One trajectory CSV row. All norms are lattice L^2 quadratures except
// lemma_Q and energy_sum, which carry the <k,eta>^s weight of the energy
// estimate. conserved_* are unnormalized maxima over modes.
struct DiagnosticsRecord {
  double t = 0;
  double norm_Pvx = 0;
  double norm_Pvy = 0;
  double norm_Qv = 0;
  double norm_rho = 0;
  double norm_theta = 0;
  double norm_rho_plus_theta = 0;
  double lemma_Q = 0;
  double energy_sum = 0;
  double conserved_r1_max = 0;
  double conserved_r2_max = 0;
};

// x component of the incompressible velocity: weight |eta - kt|/p on Omega.
// All lattice diagnostics reject nonzero k=0 content (domain error); the
// zero mode is diagnosed separately.
double incompressible_x_norm(const GridSpec& g, const std::vector<cplx>& Omega, double t);

// y component: weight |k|/p on Omega.
double incompressible_y_norm(const GridSpec& g, const std::vector<cplx>& Omega, double t);

// Compressible component: weight p^{-1/2} on A.
double compressible_norm(const GridSpec& g, const std::vector<cplx>& A, double t);

// Density and temperature are reconstructed mode-wise from the good unknown
// and the conserved combination G = (gamma-1) R - Theta:
//   rho = (G + gamma Phi)/gamma,  theta = gamma Phi - rho,
// so rho + theta = gamma Phi identically. Returns the plain L^2 norms of
// rho, theta, rho + theta; the 1/M of the source decomposition scales both
// sides and is dropped.
struct ThermoNorms {
  double rho = 0;
  double theta = 0;
  double rho_plus_theta = 0;
};
ThermoNorms thermo_norms(const GridSpec& g, const std::vector<cplx>& Phi,
                         const std::vector<cplx>& G, double gamma, double M);

// (1/M) ||p^{-1/4} Phi||_{H^s} + ||p^{-3/4} A||_{H^s}, weights at time t.
// Bounded in t for admissible data; the boundedness is the content of the
// energy estimate.
double lemma_quantity(const GridSpec& g, const std::vector<cplx>& Phi,
                      const std::vector<cplx>& A, double t, double s, double M);

// delta_eta-weighted lattice sum of the mode energies E(Z1, Z2), ascending
// fold. Nonnegative whenever the coercivity hypothesis M nu^{1/3} <= 1 holds.
double energy_lattice_sum(const GridSpec& g, const std::vector<cplx>& Phi,
                          const std::vector<cplx>& A, double t, const FlowParams& par);

} // namespace couette
