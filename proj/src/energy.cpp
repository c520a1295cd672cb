#include "couette/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "couette/symbols.hpp"

namespace couette {

WeightedPair weighted_pair(cplx Phi, cplx A, double t, int k, double eta, double s, double M,
                           double nu) {
  double p = p_symbol(t, k, eta);
  double m = ghost_multiplier(t, k, eta, nu);
  double J = std::pow(1.0 + double(k) * k + eta * eta, 0.5 * s);
  double p14 = std::pow(p, 0.25);
  double p34 = std::pow(p, 0.75);
  WeightedPair zp;
  zp.Z1 = (J / (M * m * p14)) * Phi;
  zp.Z2 = (J / (m * p34)) * A;
  return zp;
}

EnergyRecord energy_functional(const WeightedPair& zp, double t, int k, double eta, double M,
                               double nu) {
  double p = p_symbol(t, k, eta);
  double dp = dt_p_symbol(t, k, eta);
  double z1 = std::norm(zp.Z1);
  double z2 = std::norm(zp.Z2);
  double cr = (std::conj(zp.Z1) * zp.Z2).real();
  double diag = 1.0 + M * M * dp * dp / (p * p * p);
  EnergyRecord rec;
  rec.cross_dtp = 0.25 * M * dp / (p * std::sqrt(p)) * cr;
  rec.cross_ghost = -0.25 * M * std::cbrt(nu) / std::sqrt(p) * cr;
  rec.E = 0.5 * diag * z1 + 0.5 * z2 + rec.cross_dtp + rec.cross_ghost;
  rec.coercive_form = 0.25 * (diag * z1 + z2);
  return rec;
}

double coercivity_ratio(const EnergyRecord& rec) {
  if (!(rec.coercive_form > 0))
    throw std::domain_error("coercivity_ratio: degenerate (zero) energy record");
  return rec.E / rec.coercive_form;
}

double gronwall_factor(double t, int k, double eta) {
  if (k == 0) throw std::domain_error("gronwall_factor: k = 0 is outside the domain");
  double tc = eta / k;
  return std::atan(tc) - std::atan(tc - t);
}

BalanceTerms energy_balance_terms(cplx Phi, cplx A, cplx forcing, double t, int k, double eta,
                                  const FlowParams& par) {
  if (k == 0) throw std::domain_error("energy_balance_terms: k = 0 is outside the domain");
  const double M = par.M;
  const double nu = par.nu;
  const double nu3 = std::cbrt(nu);
  const double kk = double(k) * k;
  const double p = p_symbol(t, k, eta);
  const double dp = dt_p_symbol(t, k, eta);
  const double m = ghost_multiplier(t, k, eta, nu);
  const double mu = ghost_log_derivative(t, k, eta, nu);
  const double J = std::pow(1.0 + kk + eta * eta, 0.5 * par.s);
  const double sp = std::sqrt(p);
  const double p32 = p * sp;
  const double p52 = p * p * sp;

  WeightedPair zp = weighted_pair(Phi, A, t, k, eta, par.s, M, nu);
  const double z1 = std::norm(zp.Z1);
  const double z2 = std::norm(zp.Z2);
  const double cr = (std::conj(zp.Z1) * zp.Z2).real();
  const double f_z1 = (forcing * std::conj(zp.Z1)).real();
  const double f_z2 = (forcing * std::conj(zp.Z2)).real();

  BalanceTerms bt;
  bt.lhs_z1 = (mu * (1.0 + M * M * dp * dp / (p * p * p)) +
               0.25 * nu3 * (1.0 + 2.0 * M * M * kk / (p * p))) *
              z1;
  bt.lhs_z2 = (mu + nu * p) * z2;
  bt.D[0] = 0.25 * nu3 * z2;
  bt.D[1] = 0.25 * M * nu * nu3 * sp * cr;
  bt.D[2] = -0.25 * nu * M * dp / sp * cr;
  bt.D[3] = M * M * (2.5 * kk * dp / (p * p * p) - 1.75 * dp * dp * dp / (p * p * p * p)) * z1;
  bt.D[4] = M *
            (0.125 * nu3 * dp / p32 + 2.5 * kk / p32 - 1.375 * dp * dp / p52 +
             0.5 * nu3 * mu / sp - 0.5 * mu * dp / p32) *
            cr;
  bt.D[5] = J * M * nu3 * kk / (2.0 * m * std::pow(p, 2.25)) * f_z1;
  bt.D[6] = -J * M * kk * dp / (2.0 * m * std::pow(p, 3.25)) * f_z1;
  bt.D[7] = -J * 2.0 * kk / (m * std::pow(p, 1.75)) * f_z2;

  bt.rhs = -bt.lhs_z1 - bt.lhs_z2;
  bt.sum_abs = std::abs(bt.lhs_z1) + std::abs(bt.lhs_z2);
  for (double d : bt.D) {
    bt.rhs += d;
    bt.sum_abs += std::abs(d);
  }
  return bt;
}

BalanceSample energy_balance_residual_along(const ReducedModeState& state, double t0,
                                            double t_center, const StepControl& ctrl,
                                            const FlowParams& par, cplx forcing, double fd_dt) {
  if (!(fd_dt > 0)) throw std::domain_error("energy balance: fd_dt must be positive");
  if (!(t0 <= t_center - 2.0 * fd_dt))
    throw std::domain_error("energy balance: stencil starts before the provided state");
  StepControl fine = ctrl;
  fine.dt_max = std::min(ctrl.dt_max, 0.25 * fd_dt);

  ReducedModeState st = state;
  double t = t0;
  double E[5];
  double rhs_center = 0, norm_center = 0;
  BalanceSample sample;
  for (int i = 0; i < 5; ++i) {
    double ti = t_center + (i - 2) * fd_dt;
    advance_reduced(st, t, ti, i == 0 ? ctrl : fine, par, forcing);
    WeightedPair zp = weighted_pair(st.Phi, st.A, t, st.k, st.eta, par.s, par.M, par.nu);
    EnergyRecord rec = energy_functional(zp, t, st.k, st.eta, par.M, par.nu);
    E[i] = rec.E;
    if (i == 2) {
      sample.k = st.k;
      sample.eta = st.eta;
      sample.t = t;
      sample.record = rec;
      BalanceTerms bt = energy_balance_terms(st.Phi, st.A, forcing, t, st.k, st.eta, par);
      rhs_center = bt.rhs;
      norm_center = bt.sum_abs;
    }
  }
  double dEdt = (-E[4] + 8.0 * E[3] - 8.0 * E[1] + E[0]) / (12.0 * fd_dt);
  sample.residual = std::abs(dEdt - rhs_center) / (1.0 + norm_center);
  return sample;
}

} // namespace couette
