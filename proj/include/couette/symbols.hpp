#pragma once

#include <string>
#include <vector>

namespace couette {

// Closed-form symbol of -Laplacian in the sheared frame and the ghost
// multiplier attached to the critical time t = eta/k. Every function here
// rejects k = 0: the zero mode never enters p-weighted machinery.

// p(t,k,eta) = k^2 + (eta - k t)^2, >= k^2 >= 1 for |k| >= 1.
double p_symbol(double t, int k, double eta);

// d/dt p = -2 k (eta - k t); satisfies |dt_p| <= 2|k| sqrt(p) everywhere.
double dt_p_symbol(double t, int k, double eta);

// m(t) = exp(-[arctan(nu^{1/3}(t - eta/k)) + arctan(nu^{1/3} eta/k)]),
// the solution of  dm/dt / m = -nu^{1/3} / ([nu^{1/3}(t - eta/k)]^2 + 1)
// with m(0) = 1. Range (e^{-pi}, 1] for t >= 0.
double ghost_multiplier(double t, int k, double eta, double nu);

// dm/dt / m in closed form (always negative).
double ghost_log_derivative(double t, int k, double eta, double nu);

// Test oracle: m recomputed by adaptive quadrature of its defining ODE.
double ghost_multiplier_quadrature(double t, int k, double eta, double nu);

// nu^{-1/6} ( sqrt(-dm/dt / m) + nu^{1/2} sqrt(p) ); bounded below by 1
// with the minimum attained at the critical time (empirical constant is
// reported by the audit, never assumed).
double crucial_property_margin(double t, int k, double eta, double nu);

// p (1 + k^2 + eta^2) / (1 + t^2); bounded below by 1/4 over k != 0.
double bracket_inequality_margin(double t, int k, double eta);

// Exhaustive sampling audit of the three symbol inequalities.
struct AuditGrid {
  double t_max = 1000.0;
  double t_step = 0.5;
  int k_min = 1;
  int k_max = 8;
  double eta_max = 32.0;
  double eta_step = 0.25;
  double nu = 0.01;
};

struct AuditRow {
  std::string inequality;  // dtp_vs_2k_sqrtp | bracket | crucial
  double min_margin;
  double argmin_t;
  int argmin_k;
  double argmin_eta;
};

// Three rows: margin of 2|k|sqrt(p) - |dt_p| (nonnegative iff the bound
// holds), bracket_inequality_margin, crucial_property_margin.
std::vector<AuditRow> audit_symbols(const AuditGrid& grid);

} // namespace couette
