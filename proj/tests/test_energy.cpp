#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "couette/energy.hpp"
#include "couette/symbols.hpp"

using namespace couette;

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit(std::uint64_t h) { return double(h >> 11) * 0x1p-53; }

} // namespace

TEST_CASE("weighted_pair hand values") {
  // t=0, k=1, eta=0, s=0: J=1, m=1, p=1, so Z1 = Phi/M and Z2 = A
  WeightedPair zp = weighted_pair(cplx(1, 0), cplx(0, 0), 0.0, 1, 0.0, 0.0, 1.0, 0.01);
  CHECK(zp.Z1 == cplx(1, 0));
  CHECK(zp.Z2 == cplx(0, 0));
  zp = weighted_pair(cplx(3, 0), cplx(0, -2), 0.0, 1, 0.0, 0.0, 2.0, 0.01);
  CHECK(zp.Z1 == cplx(1.5, 0));
  CHECK(zp.Z2 == cplx(0, -2));

  // t=0, k=1, eta=1, s=2: J = 3, p = 2, m = 1
  zp = weighted_pair(cplx(1, 0), cplx(1, 0), 0.0, 1, 1.0, 2.0, 1.0, 0.01);
  CHECK(zp.Z1.real() == doctest::Approx(3.0 * std::pow(2.0, -0.25)).epsilon(1e-14));
  CHECK(zp.Z2.real() == doctest::Approx(3.0 * std::pow(2.0, -0.75)).epsilon(1e-14));

  // the ghost multiplier enters as 1/m
  double t = 5.0;
  double m = ghost_multiplier(t, 2, 1.0, 0.01);
  double p = p_symbol(t, 2, 1.0);
  zp = weighted_pair(cplx(1, 0), cplx(0, 0), t, 2, 1.0, 0.0, 1.0, 0.01);
  CHECK(zp.Z1.real() == doctest::Approx(std::pow(p, -0.25) / m).epsilon(1e-13));
}

TEST_CASE("energy value at the critical time") {
  // at t = eta/k: dt_p = 0, p = k^2 = 1; with Z1 = Z2 = 1, M = 1, nu = 1e-3
  // E = 1/2 + 1/2 - (nu^{1/3}/4) = 0.975
  WeightedPair zp{cplx(1, 0), cplx(1, 0)};
  EnergyRecord rec = energy_functional(zp, 2.0, 1, 2.0, 1.0, 1e-3);
  CHECK(rec.E == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(rec.coercive_form == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rec.cross_dtp == 0.0);
  CHECK(rec.cross_ghost == doctest::Approx(-0.025).epsilon(1e-14));
}

TEST_CASE("coercivity ratio") {
  // Z2 = 0 at a critical time: E = 1/2 |Z1|^2, coercive = 1/4 |Z1|^2
  WeightedPair zp{cplx(0.7, -0.3), cplx(0, 0)};
  EnergyRecord rec = energy_functional(zp, 1.0, 2, 2.0, 1.0, 0.01);
  CHECK(coercivity_ratio(rec) == doctest::Approx(2.0).epsilon(1e-14));

  EnergyRecord zero;
  CHECK_THROWS_AS(coercivity_ratio(zero), std::domain_error);

  // hypothesis M nu^{1/3} <= 1: the ratio stays within a fixed band
  for (int n = 0; n < 300; ++n) {
    std::uint64_t s = mix(n);
    WeightedPair z{cplx(2.0 * unit(mix(s)) - 1.0, 2.0 * unit(mix(s ^ 1)) - 1.0),
                   cplx(2.0 * unit(mix(s ^ 2)) - 1.0, 2.0 * unit(mix(s ^ 3)) - 1.0)};
    int k = 1 + int(mix(s ^ 4) % 8);
    double eta = 64.0 * unit(mix(s ^ 5)) - 32.0;
    double t = 100.0 * unit(mix(s ^ 6));
    EnergyRecord r = energy_functional(z, t, k, eta, 1.0, 0.01);
    if (r.coercive_form == 0.0) continue;
    double ratio = coercivity_ratio(r);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 3.5);
  }
}

TEST_CASE("gronwall factor closed form, quadrature, range") {
  CHECK(gronwall_factor(1.0, 1, 0.0) == doctest::Approx(std::atan(1.0)).epsilon(1e-15));
  CHECK(gronwall_factor(2.0, 1, 1.0) ==
        doctest::Approx(2.0 * std::atan(1.0)).epsilon(1e-15));
  CHECK(gronwall_factor(0.0, 3, -5.0) == 0.0);
  CHECK_THROWS_AS(gronwall_factor(1.0, 0, 1.0), std::domain_error);

  // integral of k^2/p by composite Simpson
  auto quad = [](double t, int k, double eta) {
    const int n = 20000;
    double h = t / n;
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      double a = i * h, b = a + h;
      auto f = [&](double tau) { return double(k) * k / p_symbol(tau, k, eta); };
      acc += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return acc;
  };
  for (int n = 0; n < 20; ++n) {
    std::uint64_t s = mix(500 + n);
    int k = 1 + int(mix(s) % 4);
    double eta = 16.0 * unit(mix(s ^ 1)) - 8.0;
    double t = 20.0 * unit(mix(s ^ 2));
    double g = gronwall_factor(t, k, eta);
    CHECK(g == doctest::Approx(quad(t, k, eta)).epsilon(1e-9));
    CHECK(g >= 0.0);
    CHECK(g < 3.14159265358979323846);
  }
}

TEST_CASE("balance terms vanish on the zero state") {
  FlowParams par;
  BalanceTerms bt = energy_balance_terms(cplx(0, 0), cplx(0, 0), cplx(0, 0), 1.0, 1, 0.5, par);
  CHECK(bt.lhs_z1 == 0.0);
  CHECK(bt.lhs_z2 == 0.0);
  for (double d : bt.D) CHECK(d == 0.0);
  CHECK(bt.rhs == 0.0);
  CHECK(bt.sum_abs == 0.0);
}

TEST_CASE("forcing terms are the only forcing-dependent ones") {
  FlowParams par;
  cplx Phi(0.3, -0.2), A(0.1, 0.5);
  BalanceTerms h = energy_balance_terms(Phi, A, cplx(0, 0), 2.0, 1, 1.5, par);
  CHECK(h.D[5] == 0.0);
  CHECK(h.D[6] == 0.0);
  CHECK(h.D[7] == 0.0);
  BalanceTerms f = energy_balance_terms(Phi, A, cplx(0.4, 0.1), 2.0, 1, 1.5, par);
  CHECK(f.D[5] != 0.0);
  CHECK(f.D[7] != 0.0);
  // D1..D5 and the left side do not see the forcing
  CHECK(f.lhs_z1 == h.lhs_z1);
  CHECK(f.lhs_z2 == h.lhs_z2);
  for (int i = 0; i < 5; ++i) CHECK(f.D[i] == h.D[i]);
}

TEST_CASE("the assembled balance matches dE/dt along real trajectories") {
  FlowParams par;
  StepControl ctrl;
  ctrl.t_end = 10.0;
  for (int n = 0; n < 8; ++n) {
    std::uint64_t s = mix(900 + n);
    ReducedModeState st;
    st.k = 1 + int(mix(s) % 4);
    st.eta = 16.0 * unit(mix(s ^ 1)) - 8.0;
    st.Phi = cplx(unit(mix(s ^ 2)) - 0.5, unit(mix(s ^ 3)) - 0.5);
    st.A = cplx(unit(mix(s ^ 4)) - 0.5, unit(mix(s ^ 5)) - 0.5);
    cplx forcing = (n % 2) ? cplx(unit(mix(s ^ 6)) - 0.5, 0.1) : cplx(0, 0);
    double t_center = 1.0 + 8.0 * unit(mix(s ^ 7));
    BalanceSample bs = energy_balance_residual_along(st, 0.0, t_center, ctrl, par, forcing,
                                                     1e-4);
    CHECK(bs.residual <= 1e-8);
    CHECK(bs.k == st.k);
    CHECK(bs.t == t_center);
  }
}

TEST_CASE("balance stencil validates its inputs") {
  FlowParams par;
  StepControl ctrl;
  ReducedModeState st;
  st.k = 1;
  st.Phi = cplx(1, 0);
  CHECK_THROWS_AS(
      energy_balance_residual_along(st, 0.0, 1.0, ctrl, par, cplx(0, 0), 0.0),
      std::domain_error);
  CHECK_THROWS_AS(
      energy_balance_residual_along(st, 1.0, 1.0001, ctrl, par, cplx(0, 0), 1e-3),
      std::domain_error);
}
