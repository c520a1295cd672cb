#include "couette/symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace couette {

static void require_k(int k, const char* who) {
  if (k == 0) throw std::domain_error(std::string(who) + ": k = 0 is outside the domain");
}

double p_symbol(double t, int k, double eta) {
  require_k(k, "p_symbol");
  double w = eta - k * t;
  return double(k) * k + w * w;
}

double dt_p_symbol(double t, int k, double eta) {
  require_k(k, "dt_p_symbol");
  return -2.0 * k * (eta - k * t);
}

double ghost_multiplier(double t, int k, double eta, double nu) {
  require_k(k, "ghost_multiplier");
  double c = std::cbrt(nu);
  double tc = eta / k;
  return std::exp(-(std::atan(c * (t - tc)) + std::atan(c * tc)));
}

double ghost_log_derivative(double t, int k, double eta, double nu) {
  require_k(k, "ghost_log_derivative");
  double c = std::cbrt(nu);
  double x = c * (t - eta / k);
  return -c / (x * x + 1.0);
}

namespace {

// adaptive Simpson for the (smooth, rational) log-derivative integrand
double simpson(double a, double fa, double b, double fb, double fm, double tol, int depth,
               double (*f)(double, double, double), double c, double tc) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm, c, tc), frm = f(rm, c, tc);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(a, fa, m, fm, flm, 0.5 * tol, depth - 1, f, c, tc) +
         simpson(m, fm, b, fb, frm, 0.5 * tol, depth - 1, f, c, tc);
}

double ghost_rate(double tau, double c, double tc) {
  double x = c * (tau - tc);
  return c / (x * x + 1.0);
}

} // namespace

double ghost_multiplier_quadrature(double t, int k, double eta, double nu) {
  require_k(k, "ghost_multiplier_quadrature");
  if (t == 0.0) return 1.0;
  double c = std::cbrt(nu);
  double tc = eta / k;
  double fa = ghost_rate(0.0, c, tc);
  double fb = ghost_rate(t, c, tc);
  double fm = ghost_rate(0.5 * t, c, tc);
  double integral = simpson(0.0, fa, t, fb, fm, 1e-13, 48, ghost_rate, c, tc);
  return std::exp(-integral);
}

double crucial_property_margin(double t, int k, double eta, double nu) {
  require_k(k, "crucial_property_margin");
  double damping = -ghost_log_derivative(t, k, eta, nu);
  double p = p_symbol(t, k, eta);
  return std::pow(nu, -1.0 / 6.0) * (std::sqrt(damping) + std::sqrt(nu) * std::sqrt(p));
}

double bracket_inequality_margin(double t, int k, double eta) {
  require_k(k, "bracket_inequality_margin");
  return p_symbol(t, k, eta) * (1.0 + double(k) * k + eta * eta) / (1.0 + t * t);
}

std::vector<AuditRow> audit_symbols(const AuditGrid& grid) {
  AuditRow rows[3] = {
      {"dtp_vs_2k_sqrtp", 0, 0, 0, 0}, {"bracket", 0, 0, 0, 0}, {"crucial", 0, 0, 0, 0}};
  bool first = true;
  int n_t = static_cast<int>(std::floor(grid.t_max / grid.t_step + 1e-9));
  int n_eta = static_cast<int>(std::floor(grid.eta_max / grid.eta_step + 1e-9));
  for (int k = grid.k_min; k <= grid.k_max; ++k) {
    for (int je = -n_eta; je <= n_eta; ++je) {
      double eta = je * grid.eta_step;
      for (int jt = 0; jt <= n_t; ++jt) {
        double t = jt * grid.t_step;
        double p = p_symbol(t, k, eta);
        double m[3];
        m[0] = 2.0 * std::abs(double(k)) * std::sqrt(p) - std::abs(dt_p_symbol(t, k, eta));
        m[1] = bracket_inequality_margin(t, k, eta);
        m[2] = crucial_property_margin(t, k, eta, grid.nu);
        for (int q = 0; q < 3; ++q) {
          if (first || m[q] < rows[q].min_margin) {
            rows[q].min_margin = m[q];
            rows[q].argmin_t = t;
            rows[q].argmin_k = k;
            rows[q].argmin_eta = eta;
          }
        }
        first = false;
      }
    }
  }
  return {rows[0], rows[1], rows[2]};
}

} // namespace couette
