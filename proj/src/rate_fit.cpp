#include "couette/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace couette {

namespace {

double bracket(double t) { return std::sqrt(1.0 + t * t); }

// Window selection with the numerical-zero exclusion shared by all fits.
// Returns indices into (t, v).
std::vector<std::size_t> select(const std::vector<double>& t, const std::vector<double>& v,
                                double t_lo, double t_hi, const char* who) {
  if (t.size() != v.size()) throw std::domain_error(std::string(who) + ": length mismatch");
  if (!(t_lo < t_hi)) throw std::domain_error(std::string(who) + ": degenerate window");
  double vmax = 0;
  for (double x : v) vmax = std::max(vmax, x);
  const double floor_level = 1e-14 * vmax;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (v[i] < 0) throw std::domain_error(std::string(who) + ": negative value in window");
    if (v[i] <= floor_level) continue;  // numerical zero
    idx.push_back(i);
  }
  return idx;
}

FitResult line_fit(const std::vector<double>& x, const std::vector<double>& y, double t_lo,
                   double t_hi, const char* who) {
  const std::size_t n = x.size();
  if (n < 5) throw std::domain_error(std::string(who) + ": fewer than 5 usable points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw std::domain_error(std::string(who) + ": degenerate window");
  FitResult fit;
  fit.exponent_or_rate = sxy / sxx;
  fit.intercept = my - fit.exponent_or_rate * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.exponent_or_rate * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / double(n));
  fit.window_lo = t_lo;
  fit.window_hi = t_hi;
  fit.n_points = int(n);
  return fit;
}

} // namespace

FitResult power_law_slope(const std::vector<double>& t, const std::vector<double>& v,
                          double t_lo, double t_hi) {
  const auto idx = select(t, v, t_lo, t_hi, "power_law_slope");
  std::vector<double> x, y;
  x.reserve(idx.size());
  y.reserve(idx.size());
  for (std::size_t i : idx) {
    x.push_back(std::log(bracket(t[i])));
    y.push_back(std::log(v[i]));
  }
  return line_fit(x, y, t_lo, t_hi, "power_law_slope");
}

FitResult exp_rate(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                   double t_hi, double detrend_power) {
  const auto idx = select(t, v, t_lo, t_hi, "exp_rate");
  std::vector<double> x, y;
  x.reserve(idx.size());
  y.reserve(idx.size());
  for (std::size_t i : idx) {
    x.push_back(t[i]);
    y.push_back(std::log(v[i]) - detrend_power * std::log(bracket(t[i])));
  }
  FitResult fit = line_fit(x, y, t_lo, t_hi, "exp_rate");
  fit.exponent_or_rate = -fit.exponent_or_rate;
  return fit;
}

double bound_saturation(const std::vector<double>& t, const std::vector<double>& v, double e,
                        double head_lo, double head_hi, double tail_lo, double tail_hi) {
  const auto head = select(t, v, head_lo, head_hi, "bound_saturation");
  const auto tail = select(t, v, tail_lo, tail_hi, "bound_saturation");
  if (head.size() < 5 || tail.size() < 5)
    throw std::domain_error("bound_saturation: fewer than 5 usable points in a window");
  auto window_max = [&](const std::vector<std::size_t>& idx) {
    double m = 0;
    for (std::size_t i : idx) m = std::max(m, v[i] * std::pow(bracket(t[i]), -e));
    return m;
  };
  const double head_max = window_max(head);
  if (!(head_max > 0)) throw std::domain_error("bound_saturation: zero head window");
  return window_max(tail) / head_max;
}

} // namespace couette
