#pragma once

#include <utility>

#include "couette/grid.hpp"

namespace couette {

// Theorem hypotheses: gamma > 1, 0 < nu < 1, 0 < M <= 1/nu.
struct FlowParams {
  double gamma = 1.4;
  double nu = 0.01;
  double M = 1.0;
  double s = 1.5;  // Sobolev index of the weighted diagnostics
};

// Throws validation_error on a hypothesis violation unless allow_violation,
// in which case the violation is reported on stderr and execution continues.
void validate(const FlowParams& par, bool allow_violation);

// Amplitudes of one Fourier mode in the sheared frame: density R, divergence
// A, vorticity Omega, temperature Theta. k != 0 always; the zero mode is
// handled by the zero-mode module.
struct ModeState {
  int k = 0;
  double eta = 0;
  cplx R, A, Omega, Theta;
};

// Closed two-variable form in the good unknown Phi = (R + Theta)/gamma.
struct ReducedModeState {
  int k = 0;
  double eta = 0;
  cplx Phi, A;
};

struct Deriv4 {
  cplx dR, dA, dOmega, dTheta;
};
struct Deriv2 {
  cplx dPhi, dA;
};

cplx good_unknown(cplx R, cplx Theta, double gamma);

// d/dt (R, A, Omega, Theta) =
//   ( -A,
//     -nu p A + (dt_p/p) A - (2k^2/p) Omega + (p/(gamma M^2)) (R + Theta),
//     A,
//     -(gamma-1) A ).
Deriv4 rhs_full(const ModeState& st, double t, const FlowParams& par);

// d/dt (Phi, A) =
//   ( -A,
//     -nu p A + (dt_p/p) A + (p/M^2 + 2k^2/p) Phi - (2k^2/p) forcing ),
// forcing = Phi_in + Omega_in for the mode; forcing = 0 is the constrained
// system (initial data with rho_in + gamma omega_in + theta_in = 0).
Deriv2 rhs_reduced(const ReducedModeState& st, double t, const FlowParams& par, cplx forcing);

// Omega(t) = Phi_in + Omega_in - Phi(t) along exact trajectories.
cplx reconstruct_omega(cplx Phi, cplx Phi_in, cplx Omega_in);

// r1 = |(gamma-1) R - Theta - ((gamma-1) R_in - Theta_in)|,
// r2 = |R + gamma Omega + Theta - (R_in + gamma Omega_in + Theta_in)|;
// both vanish along exact trajectories.
std::pair<double, double> conserved_residuals(const ModeState& st, const ModeState& initial,
                                              double gamma);

} // namespace couette
