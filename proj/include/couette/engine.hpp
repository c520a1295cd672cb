#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "couette/config.hpp"
#include "couette/diagnostics.hpp"
#include "couette/energy.hpp"

namespace couette {

inline constexpr const char* version_string = "0.1.0";

// Constants of one evolved mode: forcing F = Phi_in + Omega_in and the two
// conserved initial combinations G = (gamma-1)R - Theta, S = R + gamma Omega
// + Theta used by the conservation residuals.
struct ModeConst {
  int k = 0;
  double eta = 0;
  cplx F, G_in, S_in;
};

// Trajectory on the k >= 1 half lattice (negative k is the Hermitian mirror
// and is materialized only for diagnostics). phi and a are [output][mode]
// row-major with modes in (k, eta) ascending order.
struct RunResult {
  GridSpec grid;
  FlowParams par;
  bool constrained = false;
  std::vector<double> times;
  std::vector<ModeConst> modes;
  std::vector<cplx> phi, a;
  std::vector<DiagnosticsRecord> records;
  double initial_h0_norm = 0;  // max of the four H^0 norms of the data
  double wall_seconds = 0;
  long long total_steps = 0;
  int threads_used = 1;

  std::size_t n_modes() const { return modes.size(); }
  const cplx& phi_at(std::size_t out, std::size_t mode) const {
    return phi[out * modes.size() + mode];
  }
  const cplx& a_at(std::size_t out, std::size_t mode) const {
    return a[out * modes.size() + mode];
  }
};

// Four-variable oracle trajectory on the same modes and output instants.
struct OracleResult {
  GridSpec grid;
  FlowParams par;
  std::vector<double> times;
  std::vector<ModeConst> modes;
  std::vector<cplx> R, A, Omega, Theta;  // [output][mode]
  long long total_steps = 0;
};

struct OracleCompare {
  double max_rel_diff = 0;  // (|dOmega| + |dA|) / (1 + |Omega_full| + |A_full|)
  double full_r1_max = 0;   // conservation residuals of the oracle trajectory
  double full_r2_max = 0;
};

// Data pipeline: random_field, then the constraint projector when
// configured, then normalization to data.target_norm in H^{norm_index}.
SpectralField build_initial_field(const RunConfig& c);

// Reduced-system run. Modes are split into contiguous chunks, one chunk per
// thread, and every mode is integrated through all output instants by the
// thread that owns it; trajectories and the single-threaded diagnostics fold
// are therefore identical for every thread count, byte for byte. Constrained
// runs integrate forcing = 0: the projected data matches the homogeneous
// system to roundoff, and the exact zero lets spent modes be skipped.
RunResult run_simulation(const RunConfig& c, int threads);

// Four-variable oracle over the same data; no reduction, no reconstruction.
OracleResult run_full_oracle(const RunConfig& c, int threads);

// Reduced trajectory (Omega reconstructed as F - Phi) against the oracle.
OracleCompare compare_full_reduced(const RunResult& red, const OracleResult& full);

// Energy-identity spot checks: n_samples random (mode, center time) pairs
// drawn by splitmix64 from sample_seed, each re-integrated from the last
// stored output before the five-point stencil. t_end must exceed 2.5.
std::vector<BalanceSample> sample_energy_balance(const RunResult& res, const RunConfig& c,
                                                 int n_samples, std::uint64_t sample_seed,
                                                 double fd_dt);

// Full-lattice (rho, alpha, omega, theta) at one stored output, k = 0 row
// zero, negative k mirrored by conjugation.
SpectralField materialize_state(const RunResult& res, std::size_t out_index, double gamma);

// Schema: t,norm_Pvx,norm_Pvy,norm_Qv,norm_rho,norm_theta,
// norm_rho_plus_theta,lemma_Q,energy_sum,conserved_r1_max,conserved_r2_max;
// 17 significant digits, C locale.
void write_trajectory_csv(std::ostream& os, const RunResult& res);

// JSON manifest: code version, full config, thread count, wall time, step
// and mode counts, initial data norm.
void write_manifest(std::ostream& os, const RunConfig& c, const RunResult& res);

} // namespace couette
