#pragma once

#include <vector>

namespace couette {

// Least-squares fit over a time window. exponent_or_rate is the power-law
// slope for power_law_slope and the decay rate (-slope) for exp_rate.
struct FitResult {
  double exponent_or_rate = 0;
  double intercept = 0;
  double rms_residual = 0;
  double window_lo = 0;
  double window_hi = 0;
  int n_points = 0;
};

// Slope of log v against log<t>, <t> = sqrt(1+t^2). Window is inclusive.
// Negative values in the window are a domain error; values below
// 1e-14 * max(v) are treated as numerical zeros and excluded; fewer than
// 5 surviving points is a domain error.
FitResult power_law_slope(const std::vector<double>& t, const std::vector<double>& v,
                          double t_lo, double t_hi);

// Slope of log v - detrend_power * log<t> against t, negated, so that a pure
// e^{-rt} <t>^d series returns r. Same exclusion rules.
FitResult exp_rate(const std::vector<double>& t, const std::vector<double>& v, double t_lo,
                   double t_hi, double detrend_power);

// max over the tail window of S = v <t>^{-e}, divided by the max over the
// head window; a ratio of order one certifies the bound v <= C <t>^e.
double bound_saturation(const std::vector<double>& t, const std::vector<double>& v, double e,
                        double head_lo, double head_hi, double tail_lo, double tail_hi);

} // namespace couette
