#pragma once

#include <vector>

#include "couette/dynamics.hpp"

namespace couette {

// Step control shared by every mode. Per-mode step size is
// dt = min(dt_max, safety * M / (1 + |k| t), t_next_output - t),
// resolving the acoustic frequency ~ sqrt(p)/M ~ |k| t / M. Output instants
// are hit exactly by splitting the last step; no interpolation.
struct StepControl {
  double dt_max = 0.01;
  double safety = 0.1;
  double t_end = 100.0;
  std::vector<double> output_times;  // strictly ascending, first = 0
};

// nu * integral_{t0}^{t1} p(tau,k,eta) dtau, in closed form.
double viscous_phase(double t0, double t1, int k, double eta, double nu);

// One classical RK4 step of the reduced system after the exact substitution
// B = A e^{V}/p with V = viscous_phase(t0, tau): the substitution removes
// both the -nu p A term and the (dt_p/p) A term before the stage sweep.
ReducedModeState step_reduced(const ReducedModeState& st, double t, double dt,
                              const FlowParams& par, cplx forcing);

// Same substitution applied to the four-variable system (oracle path).
ModeState step_full(const ModeState& st, double t, double dt, const FlowParams& par);

// Advances to t_target exactly under the step law. An exactly zero state with
// zero forcing is a fixed point of the step, so it is forwarded to t_target
// directly; the outcome is identical, step by step, to integrating zeros.
// A state whose components have all left the normal floating-point range is
// flushed to that exact zero (round-to-nearest pins contracting amplitudes at
// the subnormal floor, so a fully decayed mode would otherwise step forever).
// Throws integration_error with the mode identity on non-finite amplitudes.
void advance_reduced(ReducedModeState& st, double& t, double t_target, const StepControl& ctrl,
                     const FlowParams& par, cplx forcing);
void advance_full(ModeState& st, double& t, double t_target, const StepControl& ctrl,
                  const FlowParams& par);

// Number of steps taken by the last advance_* call on this thread.
long long last_advance_steps();

namespace detail {
// Test instrumentation: the same gauged RK4 step with the acoustic coupling
// and forcing removed, leaving the pure decay channel
// dA/dt = (-nu p + dt_p/p) A whose exact solution is
// A(t+dt) = A(t) (p(t+dt)/p(t)) e^{-viscous_phase(t,t+dt)}.
ReducedModeState step_reduced_decay_only(const ReducedModeState& st, double t, double dt,
                                         const FlowParams& par);
} // namespace detail

} // namespace couette
