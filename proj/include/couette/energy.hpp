#pragma once

#include "couette/dynamics.hpp"
#include "couette/integrator.hpp"

namespace couette {

// Weighted unknowns
//   Z1 = (1/M) <k,eta>^s m^{-1} p^{-1/4} Phi,
//   Z2 =       <k,eta>^s m^{-1} p^{-3/4} A,
// with the closed-form ghost multiplier m. <k,eta> = sqrt(1+k^2+eta^2).
struct WeightedPair {
  cplx Z1, Z2;
};

WeightedPair weighted_pair(cplx Phi, cplx A, double t, int k, double eta, double s, double M,
                           double nu);

// E = 1/2 (1 + M^2 dt_p^2/p^3) |Z1|^2 + 1/2 |Z2|^2
//     + (M/4)(dt_p/p^{3/2}) Re(conj(Z1) Z2) - (M nu^{1/3}/4) p^{-1/2} Re(conj(Z1) Z2).
// coercive_form = 1/4 ((1 + M^2 dt_p^2/p^3) |Z1|^2 + |Z2|^2).
struct EnergyRecord {
  double E = 0;
  double coercive_form = 0;
  double cross_dtp = 0;    // (M/4)(dt_p/p^{3/2}) Re(conj(Z1) Z2)
  double cross_ghost = 0;  // -(M nu^{1/3}/4) p^{-1/2} Re(conj(Z1) Z2)
};

EnergyRecord energy_functional(const WeightedPair& zp, double t, int k, double eta, double M,
                               double nu);

// E / coercive_form; throws domain_error on a zero record.
double coercivity_ratio(const EnergyRecord& rec);

// integral_0^t k^2/p dtau = arctan(eta/k) - arctan(eta/k - t); in [0, pi) for t >= 0.
double gronwall_factor(double t, int k, double eta);

// Exact term-by-term balance of dE/dt. With mu = dm/dt / m and J = <k,eta>^s:
//   dE/dt + [mu (1 + M^2 dt_p^2/p^3) + (nu^{1/3}/4)(1 + 2 M^2 k^2/p^2)] |Z1|^2
//         + [mu + nu p] |Z2|^2
//   = D1 + ... + D8,
//   D1 = (nu^{1/3}/4) |Z2|^2
//   D2 = (M nu^{4/3}/4) sqrt(p) Re(conj(Z1) Z2)
//   D3 = -(nu M/4)(dt_p/sqrt(p)) Re(conj(Z1) Z2)
//   D4 = M^2 (5 k^2 dt_p/(2 p^3) - (7/4) dt_p^3/p^4) |Z1|^2
//   D5 = M [ (nu^{1/3}/8) dt_p/p^{3/2} + (5/2) k^2/p^{3/2} - (11/8) dt_p^2/p^{5/2}
//            + (nu^{1/3}/2) mu/sqrt(p) - (1/2) mu dt_p/p^{3/2} ] Re(conj(Z1) Z2)
//   D6 =  J M nu^{1/3} k^2/(2 m p^{9/4})  Re(F conj(Z1))
//   D7 = -J M k^2 dt_p/(2 m p^{13/4})     Re(F conj(Z1))
//   D8 = -J 2 k^2/(m p^{7/4})             Re(F conj(Z2)),
// F = Phi_in + Omega_in. The identity is exact for the reduced system; the
// residual of a computed trajectory is pure finite-difference truncation.
struct BalanceTerms {
  double lhs_z1 = 0;   // [mu (...) + (nu^{1/3}/4)(...)] |Z1|^2
  double lhs_z2 = 0;   // [mu + nu p] |Z2|^2
  double D[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  double rhs = 0;      // -lhs_z1 - lhs_z2 + sum D; equals dE/dt exactly
  double sum_abs = 0;  // sum of magnitudes of all ten terms
};

BalanceTerms energy_balance_terms(cplx Phi, cplx A, cplx forcing, double t, int k, double eta,
                                  const FlowParams& par);

// Advances a mode from (state, t0) through the five-point stencil centered at
// t_center with spacing fd_dt (step size capped at fd_dt/4 inside the
// stencil), differentiates E with the 4th-order central formula, and returns
// |dE/dt - assembled rhs| / (1 + sum_abs) together with the center records.
struct BalanceSample {
  int k = 0;
  double eta = 0;
  double t = 0;
  EnergyRecord record;
  double residual = 0;
};

BalanceSample energy_balance_residual_along(const ReducedModeState& state, double t0,
                                            double t_center, const StepControl& ctrl,
                                            const FlowParams& par, cplx forcing, double fd_dt);

} // namespace couette
