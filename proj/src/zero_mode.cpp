#include "couette/zero_mode.hpp"

#include <cmath>
#include <stdexcept>

namespace couette {

ZeroDeriv zero_mode_rhs(const ZeroModeState& st, const FlowParams& par) {
  double e2 = st.eta * st.eta;
  ZeroDeriv d;
  d.drho0 = -st.alpha0;
  d.dalpha0 = (e2 / (par.gamma * par.M * par.M)) * (st.rho0 + st.theta0) -
              par.nu * e2 * st.alpha0;
  d.domega0 = st.alpha0;
  d.dtheta0 = -(par.gamma - 1.0) * st.alpha0;
  return d;
}

std::pair<cplx, cplx> damped_wave_roots(double eta, double nu, double M) {
  if (!(M > 0)) throw std::domain_error("damped_wave_roots: M must be positive");
  double e2 = eta * eta;
  double b = nu * e2;
  double c = e2 / (M * M);
  cplx disc = std::sqrt(cplx(b * b - 4.0 * c, 0.0));
  return {0.5 * (-b + disc), 0.5 * (-b - disc)};
}

ZeroModeState zero_mode_step(const ZeroModeState& st, double dt, const FlowParams& par) {
  double e2 = st.eta * st.eta;
  double drive = e2 / (par.gamma * par.M * par.M);
  double g = par.nu * e2;  // gauge rate; a = alpha0 e^{g delta} has no stiff term
  double eh = std::exp(0.5 * g * dt);
  double ef = std::exp(g * dt);
  double gm1 = par.gamma - 1.0;

  // stage derivative of (rho0, a, omega0, theta0) at offset delta with gauge factor e^{g delta}
  auto stage = [&](cplx rho, cplx a, cplx theta, double e_gauge, cplx& drho, cplx& da,
                   cplx& domega, cplx& dtheta) {
    cplx alpha = a / e_gauge;
    drho = -alpha;
    da = e_gauge * drive * (rho + theta);
    domega = alpha;
    dtheta = -gm1 * alpha;
  };

  cplx a0 = st.alpha0;
  cplx k1r, k1a, k1o, k1t, k2r, k2a, k2o, k2t, k3r, k3a, k3o, k3t, k4r, k4a, k4o, k4t;
  stage(st.rho0, a0, st.theta0, 1.0, k1r, k1a, k1o, k1t);
  stage(st.rho0 + 0.5 * dt * k1r, a0 + 0.5 * dt * k1a, st.theta0 + 0.5 * dt * k1t, eh, k2r, k2a,
        k2o, k2t);
  stage(st.rho0 + 0.5 * dt * k2r, a0 + 0.5 * dt * k2a, st.theta0 + 0.5 * dt * k2t, eh, k3r, k3a,
        k3o, k3t);
  stage(st.rho0 + dt * k3r, a0 + dt * k3a, st.theta0 + dt * k3t, ef, k4r, k4a, k4o, k4t);

  ZeroModeState out = st;
  out.rho0 = st.rho0 + dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
  out.omega0 = st.omega0 + dt / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
  out.theta0 = st.theta0 + dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
  out.alpha0 = (a0 + dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)) / ef;
  return out;
}

namespace {

// c_p e^{l_p t} + c_m e^{l_m t} with value u0 and derivative du0 at t = 0
cplx two_root_solution(cplx lp, cplx lm, cplx u0, cplx du0, double t) {
  if (lp == lm)
    throw std::domain_error("zero_mode closed form: coincident roots are not covered");
  cplx cp = (du0 - lm * u0) / (lp - lm);
  cplx cm = u0 - cp;
  return cp * std::exp(lp * t) + cm * std::exp(lm * t);
}

} // namespace

cplx zero_mode_alpha_closed(const ZeroModeState& initial, double t, const FlowParams& par) {
  auto [lp, lm] = damped_wave_roots(initial.eta, par.nu, par.M);
  double e2 = initial.eta * initial.eta;
  cplx da0 = (e2 / (par.gamma * par.M * par.M)) * (initial.rho0 + initial.theta0) -
             par.nu * e2 * initial.alpha0;
  return two_root_solution(lp, lm, initial.alpha0, da0, t);
}

cplx zero_mode_rho_plus_theta_closed(const ZeroModeState& initial, double t,
                                     const FlowParams& par) {
  auto [lp, lm] = damped_wave_roots(initial.eta, par.nu, par.M);
  cplx u0 = initial.rho0 + initial.theta0;
  cplx du0 = -par.gamma * initial.alpha0;  // d/dt (rho0 + theta0) = -gamma alpha0
  return two_root_solution(lp, lm, u0, du0, t);
}

} // namespace couette
