#include "couette/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "couette/errors.hpp"
#include "couette/initial_data.hpp"
#include "couette/integrator.hpp"

namespace couette {

SpectralField build_initial_field(const RunConfig& c) {
  SpectralField f = random_field(c.data, c.grid);
  if (c.constraint) apply_constraint(f, c.par.gamma);
  normalize(f, c.data.norm_index, c.data.target_norm);
  return f;
}

namespace {

// Half-lattice mode list, k-major. Index m <-> (k, j) via m = (k-1)*n_eta + j.
void collect_modes(const RunConfig& c, const SpectralField& f, std::vector<ModeConst>& modes,
                   std::vector<ReducedModeState>* red0, std::vector<ModeState>* full0) {
  const GridSpec& g = f.grid;
  const double gamma = c.par.gamma;
  modes.clear();
  modes.reserve(std::size_t(g.K) * g.n_eta);
  for (int k = 1; k <= g.K; ++k) {
    const int row = g.row_of(k);
    for (int j = 0; j < g.n_eta; ++j) {
      const std::size_t n = g.index(row, j);
      ModeState st;
      st.k = k;
      st.eta = g.eta_of(j);
      st.R = f.a[SRho][n];
      st.A = f.a[SAlpha][n];
      st.Omega = f.a[SOmega][n];
      st.Theta = f.a[STheta][n];
      const cplx phi_in = good_unknown(st.R, st.Theta, gamma);
      ModeConst mc;
      mc.k = st.k;
      mc.eta = st.eta;
      mc.F = c.constraint ? cplx(0, 0) : phi_in + st.Omega;
      mc.G_in = (gamma - 1.0) * st.R - st.Theta;
      mc.S_in = st.R + gamma * st.Omega + st.Theta;
      modes.push_back(mc);
      if (red0) {
        ReducedModeState rs;
        rs.k = st.k;
        rs.eta = st.eta;
        rs.Phi = phi_in;
        rs.A = st.A;
        red0->push_back(rs);
      }
      if (full0) full0->push_back(st);
    }
  }
}

int clamp_threads(int threads, std::size_t n_modes) {
  int t = std::max(1, threads);
  if (std::size_t(t) > n_modes) t = int(n_modes);
  return t;
}

void check_output_times(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0)
    throw validation_error("engine: output times must start at 0");
}

} // namespace

RunResult run_simulation(const RunConfig& c, int threads) {
  const auto wall0 = std::chrono::steady_clock::now();
  check_output_times(c.output_times);

  RunResult res;
  res.grid = c.grid;
  res.par = c.par;
  res.constrained = c.constraint;
  res.times = c.output_times;

  const SpectralField f = build_initial_field(c);
  for (int i = 0; i < 4; ++i)
    res.initial_h0_norm = std::max(res.initial_h0_norm, sobolev_norm(c.grid, f.a[i], 0.0));

  std::vector<ReducedModeState> st0;
  collect_modes(c, f, res.modes, &st0, nullptr);
  const std::size_t nm = res.modes.size();
  const std::size_t no = res.times.size();
  res.phi.assign(no * nm, cplx(0, 0));
  res.a.assign(no * nm, cplx(0, 0));

  const StepControl ctrl = step_control(c);
  const int T = clamp_threads(threads, nm);
  res.threads_used = T;

  std::vector<long long> thread_steps(T, 0);
  auto work = [&](int w) {
    const std::size_t lo = nm * std::size_t(w) / T;
    const std::size_t hi = nm * std::size_t(w + 1) / T;
    long long steps = 0;
    for (std::size_t m = lo; m < hi; ++m) {
      ReducedModeState st = st0[m];
      const cplx fc = res.modes[m].F;
      double t = 0;
      res.phi[m] = st.Phi;
      res.a[m] = st.A;
      for (std::size_t io = 1; io < no; ++io) {
        advance_reduced(st, t, res.times[io], ctrl, c.par, fc);
        steps += last_advance_steps();
        res.phi[io * nm + m] = st.Phi;
        res.a[io * nm + m] = st.A;
      }
    }
    thread_steps[w] = steps;
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int w = 0; w < T; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (long long s : thread_steps) res.total_steps += s;

  // Diagnostics fold: single-threaded, fixed order, over the materialized
  // full lattice; the k = 0 row of the scratch fields stays exactly zero.
  const GridSpec& g = c.grid;
  const double gamma = c.par.gamma;
  std::vector<cplx> phi_f(g.size(), cplx(0, 0)), a_f(g.size(), cplx(0, 0)),
      om_f(g.size(), cplx(0, 0)), g_f(g.size(), cplx(0, 0));
  for (std::size_t m = 0; m < nm; ++m) {
    const ModeConst& mc = res.modes[m];
    const int j = int(m % std::size_t(g.n_eta));
    g_f[g.index(g.row_of(mc.k), j)] = mc.G_in;
    g_f[g.index(g.row_of(-mc.k), g.n_eta - 1 - j)] = std::conj(mc.G_in);
  }
  res.records.resize(no);
  for (std::size_t io = 0; io < no; ++io) {
    const double t = res.times[io];
    double r1max = 0, r2max = 0;
    for (std::size_t m = 0; m < nm; ++m) {
      const ModeConst& mc = res.modes[m];
      const int j = int(m % std::size_t(g.n_eta));
      const std::size_t idx = g.index(g.row_of(mc.k), j);
      const std::size_t mir = g.index(g.row_of(-mc.k), g.n_eta - 1 - j);
      const cplx phi = res.phi_at(io, m);
      const cplx aa = res.a_at(io, m);
      const cplx om = mc.F - phi;
      phi_f[idx] = phi;
      phi_f[mir] = std::conj(phi);
      a_f[idx] = aa;
      a_f[mir] = std::conj(aa);
      om_f[idx] = om;
      om_f[mir] = std::conj(om);
      const cplx gphi = gamma * phi;
      const cplx rho = (mc.G_in + gphi) / gamma;
      const cplx theta = gphi - rho;
      r1max = std::max(r1max, std::abs((gamma - 1.0) * rho - theta - mc.G_in));
      r2max = std::max(r2max, std::abs(rho + gamma * om + theta - mc.S_in));
    }
    DiagnosticsRecord rec;
    rec.t = t;
    rec.norm_Pvx = incompressible_x_norm(g, om_f, t);
    rec.norm_Pvy = incompressible_y_norm(g, om_f, t);
    rec.norm_Qv = compressible_norm(g, a_f, t);
    const ThermoNorms tn = thermo_norms(g, phi_f, g_f, gamma, c.par.M);
    rec.norm_rho = tn.rho;
    rec.norm_theta = tn.theta;
    rec.norm_rho_plus_theta = tn.rho_plus_theta;
    rec.lemma_Q = lemma_quantity(g, phi_f, a_f, t, c.par.s, c.par.M);
    rec.energy_sum = energy_lattice_sum(g, phi_f, a_f, t, c.par);
    rec.conserved_r1_max = r1max;
    rec.conserved_r2_max = r2max;
    res.records[io] = rec;
  }

  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return res;
}

OracleResult run_full_oracle(const RunConfig& c, int threads) {
  check_output_times(c.output_times);
  OracleResult res;
  res.grid = c.grid;
  res.par = c.par;
  res.times = c.output_times;

  const SpectralField f = build_initial_field(c);
  std::vector<ModeState> st0;
  collect_modes(c, f, res.modes, nullptr, &st0);
  const std::size_t nm = res.modes.size();
  const std::size_t no = res.times.size();
  res.R.assign(no * nm, cplx(0, 0));
  res.A.assign(no * nm, cplx(0, 0));
  res.Omega.assign(no * nm, cplx(0, 0));
  res.Theta.assign(no * nm, cplx(0, 0));

  const StepControl ctrl = step_control(c);
  const int T = clamp_threads(threads, nm);
  std::vector<long long> thread_steps(T, 0);
  auto work = [&](int w) {
    const std::size_t lo = nm * std::size_t(w) / T;
    const std::size_t hi = nm * std::size_t(w + 1) / T;
    long long steps = 0;
    for (std::size_t m = lo; m < hi; ++m) {
      ModeState st = st0[m];
      double t = 0;
      for (std::size_t io = 0; io < no; ++io) {
        if (io > 0) {
          advance_full(st, t, res.times[io], ctrl, c.par);
          steps += last_advance_steps();
        }
        res.R[io * nm + m] = st.R;
        res.A[io * nm + m] = st.A;
        res.Omega[io * nm + m] = st.Omega;
        res.Theta[io * nm + m] = st.Theta;
      }
    }
    thread_steps[w] = steps;
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (int w = 0; w < T; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (long long s : thread_steps) res.total_steps += s;
  return res;
}

OracleCompare compare_full_reduced(const RunResult& red, const OracleResult& full) {
  if (red.times != full.times || red.n_modes() != full.modes.size())
    throw validation_error("oracle-check: mismatched trajectories");
  const std::size_t nm = red.n_modes();
  const std::size_t no = red.times.size();
  const double gamma = red.par.gamma;
  OracleCompare cmp;
  for (std::size_t io = 0; io < no; ++io) {
    for (std::size_t m = 0; m < nm; ++m) {
      const std::size_t n = io * nm + m;
      const cplx om_red = red.modes[m].F - red.phi[n];
      const double rel = (std::abs(om_red - full.Omega[n]) + std::abs(red.a[n] - full.A[n])) /
                         (1.0 + std::abs(full.Omega[n]) + std::abs(full.A[n]));
      cmp.max_rel_diff = std::max(cmp.max_rel_diff, rel);
      const ModeConst& mc = full.modes[m];
      cmp.full_r1_max = std::max(
          cmp.full_r1_max, std::abs((gamma - 1.0) * full.R[n] - full.Theta[n] - mc.G_in));
      cmp.full_r2_max = std::max(
          cmp.full_r2_max,
          std::abs(full.R[n] + gamma * full.Omega[n] + full.Theta[n] - mc.S_in));
    }
  }
  return cmp;
}

std::vector<BalanceSample> sample_energy_balance(const RunResult& res, const RunConfig& c,
                                                 int n_samples, std::uint64_t sample_seed,
                                                 double fd_dt) {
  if (!(c.t_end > 2.5)) throw validation_error("verify-energy: t_end must exceed 2.5");
  if (n_samples < 1) throw validation_error("verify-energy: need at least one sample");
  const int b = int(std::floor(c.data.eta_band / c.grid.delta_eta + 1e-9));
  const int j_lo = c.grid.N - b;
  const std::uint64_t j_span = std::uint64_t(2 * b + 1);
  const std::uint64_t k_span = std::uint64_t(c.data.k_max - c.data.k_min + 1);
  const StepControl ctrl = step_control(c);

  std::vector<BalanceSample> out;
  out.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    std::uint64_t h = splitmix64(sample_seed ^ std::uint64_t(i));
    const int k = c.data.k_min + int(h % k_span);
    h = splitmix64(h);
    const int j = j_lo + int(h % j_span);
    h = splitmix64(h);
    const double u = double(h >> 11) * 0x1p-53;
    const double t_center = 1.0 + u * (c.t_end - 2.0);

    const double t_need = t_center - 2.0 * fd_dt;
    const auto it = std::upper_bound(res.times.begin(), res.times.end(), t_need);
    const std::size_t io = std::size_t(it - res.times.begin()) - 1;
    const std::size_t m = std::size_t(k - 1) * std::size_t(c.grid.n_eta) + std::size_t(j);

    ReducedModeState st;
    st.k = k;
    st.eta = c.grid.eta_of(j);
    st.Phi = res.phi_at(io, m);
    st.A = res.a_at(io, m);
    out.push_back(energy_balance_residual_along(st, res.times[io], t_center, ctrl, c.par,
                                                res.modes[m].F, fd_dt));
  }
  return out;
}

SpectralField materialize_state(const RunResult& res, std::size_t out_index, double gamma) {
  if (out_index >= res.times.size())
    throw std::out_of_range("materialize_state: output index out of range");
  const GridSpec& g = res.grid;
  SpectralField f(g);
  const std::size_t nm = res.modes.size();
  for (std::size_t m = 0; m < nm; ++m) {
    const ModeConst& mc = res.modes[m];
    const int j = int(m % std::size_t(g.n_eta));
    const std::size_t idx = g.index(g.row_of(mc.k), j);
    const std::size_t mir = g.index(g.row_of(-mc.k), g.n_eta - 1 - j);
    const cplx phi = res.phi_at(out_index, m);
    const cplx aa = res.a_at(out_index, m);
    const cplx gphi = gamma * phi;
    const cplx rho = (mc.G_in + gphi) / gamma;
    const cplx theta = gphi - rho;
    const cplx om = mc.F - phi;
    f.a[SRho][idx] = rho;
    f.a[SRho][mir] = std::conj(rho);
    f.a[SAlpha][idx] = aa;
    f.a[SAlpha][mir] = std::conj(aa);
    f.a[SOmega][idx] = om;
    f.a[SOmega][mir] = std::conj(om);
    f.a[STheta][idx] = theta;
    f.a[STheta][mir] = std::conj(theta);
  }
  return f;
}

void write_trajectory_csv(std::ostream& os, const RunResult& res) {
  os << "t,norm_Pvx,norm_Pvy,norm_Qv,norm_rho,norm_theta,norm_rho_plus_theta,"
        "lemma_Q,energy_sum,conserved_r1_max,conserved_r2_max\n";
  char buf[512];
  for (const DiagnosticsRecord& r : res.records) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t,
                  r.norm_Pvx, r.norm_Pvy, r.norm_Qv, r.norm_rho, r.norm_theta,
                  r.norm_rho_plus_theta, r.lemma_Q, r.energy_sum, r.conserved_r1_max,
                  r.conserved_r2_max);
    os << buf;
  }
}

void write_manifest(std::ostream& os, const RunConfig& c, const RunResult& res) {
  nlohmann::ordered_json j;
  j["version"] = version_string;
  j["config"] = nlohmann::ordered_json::parse(serialize_config(c));
  j["threads_used"] = res.threads_used;
  j["wall_seconds"] = res.wall_seconds;
  j["total_steps"] = res.total_steps;
  j["n_modes"] = res.n_modes();
  j["initial_h0_norm"] = res.initial_h0_norm;
  os << j.dump(2) << "\n";
}

} // namespace couette
