#pragma once

#include <utility>

#include "couette/dynamics.hpp"
#include "couette/grid.hpp"

namespace couette {

// x-averaged (k = 0) amplitudes at frequency eta in y. Decoupled from every
// k != 0 mode; admissible data keeps all of this identically zero, so the
// module serves as an oracle and regression guard.
struct ZeroModeState {
  double eta = 0;
  cplx rho0, alpha0, omega0, theta0;
};

struct ZeroDeriv {
  cplx drho0, dalpha0, domega0, dtheta0;
};

// d/dt (rho0, alpha0, omega0, theta0) =
//   ( -alpha0,
//     (eta^2/(gamma M^2)) (rho0 + theta0) - nu eta^2 alpha0,
//     alpha0,
//     -(gamma-1) alpha0 ).
ZeroDeriv zero_mode_rhs(const ZeroModeState& st, const FlowParams& par);

// Roots of lambda^2 + nu eta^2 lambda + eta^2/M^2 = 0, the characteristic
// polynomial of the damped wave equation satisfied by alpha0 (and, with the
// same damping, by rho0 + theta0; the nu term follows from the system above).
std::pair<cplx, cplx> damped_wave_roots(double eta, double nu, double M);

// One RK4 step; the stiff -nu eta^2 alpha0 term is removed exactly by the
// integrating factor e^{nu eta^2 dt} before the stage sweep.
ZeroModeState zero_mode_step(const ZeroModeState& st, double dt, const FlowParams& par);

// Two-root closed forms used as integration oracles. Both throw domain_error
// when the roots coincide (the formulas degenerate).
cplx zero_mode_alpha_closed(const ZeroModeState& initial, double t, const FlowParams& par);
cplx zero_mode_rho_plus_theta_closed(const ZeroModeState& initial, double t,
                                     const FlowParams& par);

} // namespace couette
