#pragma once

#include <string>
#include <vector>

#include "couette/dynamics.hpp"
#include "couette/grid.hpp"
#include "couette/initial_data.hpp"
#include "couette/integrator.hpp"

namespace couette {

// Full description of one run. Defaults reproduce the reference
// configuration: gamma 1.4, nu 0.01, M 1, s 3/2, K 8, eta in [-32,32] step
// 1/4, seed 42, decay 3, t_end 100.
struct RunConfig {
  FlowParams par;
  GridSpec grid;
  DataSpec data;
  bool constraint = false;
  double t_end = 100.0;
  double dt_max = 0.01;
  double safety = 0.1;
  double output_dt = 0.5;
  std::vector<double> output_times;  // resolved; never empty after parsing
  bool explicit_output_times = false;
  bool emit_snapshots = false;
  int threads = 0;  // 0 = auto
  bool allow_hypothesis_violation = false;
};

RunConfig default_config();

// Parses and fully validates a JSON document. Unknown keys are rejected with
// their dotted path; hypothesis violations name the offending key and are
// downgraded to stderr warnings by allow_hypothesis_violation.
RunConfig parse_config(const std::string& text);

// Inverse of parse_config up to defaulting: parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

// Thread-count resolution: CLI override (>= 0) beats the COUETTE_THREADS
// environment variable beats config.threads; 0 means hardware concurrency.
// Returns a positive count.
int resolve_threads(int cli_threads, const RunConfig& c);

// StepControl for this config (dt_max, safety, t_end, output instants).
StepControl step_control(const RunConfig& c);

} // namespace couette
