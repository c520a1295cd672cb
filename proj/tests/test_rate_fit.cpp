#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "couette/rate_fit.hpp"

using namespace couette;

namespace {

double bracket(double t) { return std::sqrt(1.0 + t * t); }

std::vector<double> times(double t0, double t1, double dt) {
  std::vector<double> t;
  for (double x = t0; x <= t1 + 1e-12; x += dt) t.push_back(x);
  return t;
}

} // namespace

TEST_CASE("power_law_slope recovers a planted exponent") {
  auto t = times(0.0, 100.0, 0.5);
  std::vector<double> v;
  for (double x : t) v.push_back(3.0 * std::pow(bracket(x), -1.5));
  FitResult fit = power_law_slope(t, v, 5.0, 80.0);
  CHECK(fit.exponent_or_rate == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(fit.rms_residual <= 1e-12);
  CHECK(fit.n_points == 151);
  CHECK(fit.window_lo == 5.0);
  CHECK(fit.window_hi == 80.0);
}

TEST_CASE("power_law_slope on a constant series is zero") {
  auto t = times(1.0, 50.0, 1.0);
  std::vector<double> v(t.size(), 0.7);
  FitResult fit = power_law_slope(t, v, 1.0, 50.0);
  CHECK(std::fabs(fit.exponent_or_rate) <= 1e-13);
  CHECK(fit.rms_residual <= 1e-13);
}

TEST_CASE("power_law_slope sees through bounded oscillation") {
  auto t = times(1.0, 100.0, 0.25);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(bracket(x), 0.5) * (2.0 + std::sin(x)));
  FitResult fit = power_law_slope(t, v, 5.0, 100.0);
  CHECK(fit.exponent_or_rate >= 0.4);
  CHECK(fit.exponent_or_rate <= 0.6);
  CHECK(fit.rms_residual > 0.0);
}

TEST_CASE("exp_rate recovers a planted rate after detrending") {
  auto t = times(0.0, 60.0, 0.5);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(bracket(x), 0.5) * std::exp(-0.1 * x));
  FitResult fit = exp_rate(t, v, 2.0, 60.0, 0.5);
  CHECK(fit.exponent_or_rate == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(fit.rms_residual <= 1e-12);

  // wrong detrend power leaves a visible residual and biases the rate
  FitResult biased = exp_rate(t, v, 2.0, 60.0, 0.0);
  CHECK(biased.rms_residual > 1e-6);
  CHECK(biased.exponent_or_rate < 0.1);

  // growth comes back negative
  std::vector<double> g;
  for (double x : t) g.push_back(std::exp(0.05 * x));
  CHECK(exp_rate(t, g, 2.0, 60.0, 0.0).exponent_or_rate ==
        doctest::Approx(-0.05).epsilon(1e-10));
}

TEST_CASE("exp_rate of a constant is zero") {
  auto t = times(0.0, 30.0, 1.0);
  std::vector<double> v(t.size(), 2.5);
  CHECK(std::fabs(exp_rate(t, v, 0.0, 30.0, 0.0).exponent_or_rate) <= 1e-13);
}

TEST_CASE("bound_saturation of an exactly saturated bound is one") {
  auto t = times(0.5, 100.0, 0.5);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(bracket(x), -1.5));
  double r = bound_saturation(t, v, -1.5, 1.0, 10.0, 10.0, 100.0);
  CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bound_saturation detects an undershooting exponent") {
  // v = <t>^{-0.3} against e = -0.5: S = <t>^{0.2} peaks at the window ends,
  // ratio (<100>/<10>)^{0.2} = (10001/101)^{0.1}
  auto t = times(0.5, 100.0, 0.5);
  std::vector<double> v;
  for (double x : t) v.push_back(std::pow(bracket(x), -0.3));
  double r = bound_saturation(t, v, -0.5, 1.0, 10.0, 10.0, 100.0);
  CHECK(r == doctest::Approx(std::pow(10001.0 / 101.0, 0.1)).epsilon(1e-12));
  CHECK(r > 1.5);

  // decay faster than the bound drives the ratio under one
  std::vector<double> fast;
  for (double x : t) fast.push_back(std::pow(bracket(x), -0.9));
  CHECK(bound_saturation(t, fast, -0.5, 1.0, 10.0, 10.0, 100.0) < 1.0);
}

TEST_CASE("fits are invariant under data rescaling") {
  auto t = times(0.0, 50.0, 0.5);
  std::vector<double> v, w;
  for (double x : t) {
    double y = std::pow(bracket(x), -1.2) * (1.5 + std::cos(0.7 * x));
    v.push_back(y);
    w.push_back(0.37 * y);
  }
  CHECK(power_law_slope(t, v, 2.0, 50.0).exponent_or_rate ==
        doctest::Approx(power_law_slope(t, w, 2.0, 50.0).exponent_or_rate).epsilon(1e-12));
  CHECK(exp_rate(t, v, 2.0, 50.0, 0.5).exponent_or_rate ==
        doctest::Approx(exp_rate(t, w, 2.0, 50.0, 0.5).exponent_or_rate).epsilon(1e-12));
  CHECK(bound_saturation(t, v, -1.2, 1.0, 10.0, 10.0, 50.0) ==
        doctest::Approx(bound_saturation(t, w, -1.2, 1.0, 10.0, 10.0, 50.0)).epsilon(1e-12));
}

TEST_CASE("numerical zeros are excluded, not fitted") {
  // dead tail: the series underflows to zero past t = 50
  auto t = times(0.0, 100.0, 0.5);
  std::vector<double> v;
  for (double x : t) v.push_back(x < 50.0 ? std::pow(bracket(x), -2.0) : 0.0);
  FitResult fit = power_law_slope(t, v, 10.0, 100.0);
  CHECK(fit.exponent_or_rate == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fit.n_points == 80);  // t in [10, 49.5]

  // a window holding only zeros has no usable points
  CHECK_THROWS_AS(power_law_slope(t, v, 60.0, 100.0), std::domain_error);
}

TEST_CASE("domain errors") {
  auto t = times(0.0, 10.0, 1.0);
  std::vector<double> v(t.size(), 1.0);
  std::vector<double> short_v(3, 1.0);
  CHECK_THROWS_AS(power_law_slope(t, short_v, 0.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(power_law_slope(t, v, 5.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(power_law_slope(t, v, 8.0, 10.0), std::domain_error);  // 3 points

  std::vector<double> neg = v;
  neg[5] = -1.0;
  CHECK_THROWS_AS(power_law_slope(t, neg, 0.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(exp_rate(t, neg, 0.0, 10.0, 0.5), std::domain_error);
  // the negative point outside the window is never touched
  CHECK_NOTHROW(power_law_slope(t, neg, 6.0, 10.0));

  std::vector<double> zeros(t.size(), 0.0);
  CHECK_THROWS_AS(bound_saturation(t, zeros, -1.0, 0.0, 5.0, 5.0, 10.0), std::domain_error);
}
