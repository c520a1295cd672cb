#include "couette/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "couette/energy.hpp"
#include "couette/symbols.hpp"

namespace couette {

namespace {

// Fixed ascending (k outer, eta inner) fold; bit-reproducible.
template <class Weight>
double weighted_l2(const GridSpec& g, const std::vector<cplx>& f, const char* who,
                   Weight weight) {
  double sum = 0;
  for (int i = 0; i < g.n_k; ++i) {
    const int k = g.k_of(i);
    for (int j = 0; j < g.n_eta; ++j) {
      const cplx& z = f[g.index(i, j)];
      if (k == 0) {
        if (z != cplx(0, 0))
          throw std::domain_error(std::string(who) + ": nonzero k=0 content");
        continue;
      }
      const double w = weight(k, g.eta_of(j));
      sum += w * w * std::norm(z);
    }
  }
  return std::sqrt(g.delta_eta * sum);
}

} // namespace

double incompressible_x_norm(const GridSpec& g, const std::vector<cplx>& Omega, double t) {
  return weighted_l2(g, Omega, "incompressible_x_norm", [t](int k, double eta) {
    const double p = p_symbol(t, k, eta);
    return std::abs(eta - k * t) / p;
  });
}

double incompressible_y_norm(const GridSpec& g, const std::vector<cplx>& Omega, double t) {
  return weighted_l2(g, Omega, "incompressible_y_norm", [t](int k, double eta) {
    return std::abs(double(k)) / p_symbol(t, k, eta);
  });
}

double compressible_norm(const GridSpec& g, const std::vector<cplx>& A, double t) {
  return weighted_l2(g, A, "compressible_norm", [t](int k, double eta) {
    return 1.0 / std::sqrt(p_symbol(t, k, eta));
  });
}

ThermoNorms thermo_norms(const GridSpec& g, const std::vector<cplx>& Phi,
                         const std::vector<cplx>& G, double gamma, double M) {
  if (!(gamma > 1)) throw std::domain_error("thermo_norms: gamma must be > 1");
  (void)M;  // scales both sides of the decomposition; norms returned unweighted
  double s_rho = 0, s_theta = 0, s_sum = 0;
  for (int i = 0; i < g.n_k; ++i) {
    for (int j = 0; j < g.n_eta; ++j) {
      const std::size_t n = g.index(i, j);
      const cplx gphi = gamma * Phi[n];
      const cplx rho = (G[n] + gphi) / gamma;
      const cplx theta = gphi - rho;
      s_rho += std::norm(rho);
      s_theta += std::norm(theta);
      s_sum += std::norm(gphi);
    }
  }
  ThermoNorms out;
  out.rho = std::sqrt(g.delta_eta * s_rho);
  out.theta = std::sqrt(g.delta_eta * s_theta);
  out.rho_plus_theta = std::sqrt(g.delta_eta * s_sum);
  return out;
}

double lemma_quantity(const GridSpec& g, const std::vector<cplx>& Phi,
                      const std::vector<cplx>& A, double t, double s, double M) {
  const double phi_part = weighted_l2(g, Phi, "lemma_quantity", [t, s](int k, double eta) {
    const double j2 = 1.0 + double(k) * k + eta * eta;
    return std::pow(j2, 0.5 * s) * std::pow(p_symbol(t, k, eta), -0.25);
  });
  const double a_part = weighted_l2(g, A, "lemma_quantity", [t, s](int k, double eta) {
    const double j2 = 1.0 + double(k) * k + eta * eta;
    return std::pow(j2, 0.5 * s) * std::pow(p_symbol(t, k, eta), -0.75);
  });
  return phi_part / M + a_part;
}

double energy_lattice_sum(const GridSpec& g, const std::vector<cplx>& Phi,
                          const std::vector<cplx>& A, double t, const FlowParams& par) {
  double sum = 0;
  for (int i = 0; i < g.n_k; ++i) {
    const int k = g.k_of(i);
    for (int j = 0; j < g.n_eta; ++j) {
      const std::size_t n = g.index(i, j);
      if (k == 0) {
        if (Phi[n] != cplx(0, 0) || A[n] != cplx(0, 0))
          throw std::domain_error("energy_lattice_sum: nonzero k=0 content");
        continue;
      }
      const double eta = g.eta_of(j);
      const WeightedPair zp = weighted_pair(Phi[n], A[n], t, k, eta, par.s, par.M, par.nu);
      sum += energy_functional(zp, t, k, eta, par.M, par.nu).E;
    }
  }
  return g.delta_eta * sum;
}

} // namespace couette
