#include "couette/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "couette/errors.hpp"
#include "couette/symbols.hpp"

namespace couette {

void validate(const FlowParams& par, bool allow_violation) {
  std::string msg;
  if (!(par.gamma > 1.0))
    msg = "gamma: hypothesis gamma > 1 violated";
  else if (!(par.nu > 0.0 && par.nu < 1.0))
    msg = "nu: hypothesis 0 < nu < 1 violated";
  else if (!(par.M > 0.0 && par.M <= 1.0 / par.nu))
    msg = "M: hypothesis 0 < M <= 1/nu violated";
  else if (!(par.s >= 0.0))
    msg = "s: Sobolev index must be >= 0";
  if (msg.empty()) return;
  if (!allow_violation) throw validation_error(msg);
  std::fprintf(stderr, "warning: %s (continuing on request)\n", msg.c_str());
}

cplx good_unknown(cplx R, cplx Theta, double gamma) { return (R + Theta) / gamma; }

Deriv4 rhs_full(const ModeState& st, double t, const FlowParams& par) {
  if (st.k == 0) throw std::domain_error("rhs_full: k = 0 is outside the domain");
  double kk = double(st.k) * st.k;
  double p = p_symbol(t, st.k, st.eta);
  double dp = dt_p_symbol(t, st.k, st.eta);
  Deriv4 d;
  d.dR = -st.A;
  d.dA = (-par.nu * p + dp / p) * st.A - (2.0 * kk / p) * st.Omega +
         (p / (par.gamma * par.M * par.M)) * (st.R + st.Theta);
  d.dOmega = st.A;
  d.dTheta = -(par.gamma - 1.0) * st.A;
  return d;
}

Deriv2 rhs_reduced(const ReducedModeState& st, double t, const FlowParams& par, cplx forcing) {
  if (st.k == 0) throw std::domain_error("rhs_reduced: k = 0 is outside the domain");
  double kk = double(st.k) * st.k;
  double p = p_symbol(t, st.k, st.eta);
  double dp = dt_p_symbol(t, st.k, st.eta);
  Deriv2 d;
  d.dPhi = -st.A;
  d.dA = (-par.nu * p + dp / p) * st.A + (p / (par.M * par.M) + 2.0 * kk / p) * st.Phi -
         (2.0 * kk / p) * forcing;
  return d;
}

cplx reconstruct_omega(cplx Phi, cplx Phi_in, cplx Omega_in) { return Phi_in + Omega_in - Phi; }

std::pair<double, double> conserved_residuals(const ModeState& st, const ModeState& initial,
                                              double gamma) {
  if (st.k != initial.k || st.eta != initial.eta)
    throw std::domain_error("conserved_residuals: states belong to different modes");
  cplx c1 = (gamma - 1.0) * st.R - st.Theta - ((gamma - 1.0) * initial.R - initial.Theta);
  cplx c2 = st.R + gamma * st.Omega + st.Theta -
            (initial.R + gamma * initial.Omega + initial.Theta);
  return {std::abs(c1), std::abs(c2)};
}

} // namespace couette
