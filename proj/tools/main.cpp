#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "couette/config.hpp"
#include "couette/engine.hpp"
#include "couette/errors.hpp"
#include "couette/initial_data.hpp"
#include "couette/rate_fit.hpp"
#include "couette/symbols.hpp"
#include "couette/zero_mode.hpp"

namespace fs = std::filesystem;
using namespace couette;
using njson = nlohmann::ordered_json;

namespace {

RunConfig load_config(const std::string& path) {
  if (path.empty()) return default_config();
  std::ifstream in(path);
  if (!in) throw validation_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw validation_error("cannot open " + p.string() + " for writing");
  return out;
}

void emit_json(const njson& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os = open_out(out_path);
    os << j.dump(2) << "\n";
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  Table tb;
  std::string line, cell;
  if (!std::getline(in, line)) throw validation_error(path + ": empty file");
  std::stringstream hs(line);
  while (std::getline(hs, cell, ',')) tb.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) {
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw validation_error(path + ": bad numeric cell '" + cell + "'");
      row.push_back(x);
    }
    if (row.size() != tb.columns.size()) throw validation_error(path + ": row width mismatch");
    tb.rows.push_back(std::move(row));
  }
  return tb;
}

std::vector<double> column(const Table& tb, const std::string& name, const std::string& path) {
  for (std::size_t c = 0; c < tb.columns.size(); ++c) {
    if (tb.columns[c] != name) continue;
    std::vector<double> v;
    v.reserve(tb.rows.size());
    for (const auto& row : tb.rows) v.push_back(row[c]);
    return v;
  }
  throw validation_error(path + ": column not found: " + name);
}

njson fit_to_json(const FitResult& f) {
  return njson{{"exponent_or_rate", f.exponent_or_rate},
               {"intercept", f.intercept},
               {"rms_residual", f.rms_residual},
               {"window", {f.window_lo, f.window_hi}},
               {"n_points", f.n_points}};
}

const char* const kScalarNames[4] = {"rho", "alpha", "omega", "theta"};

void write_field_csvs(const fs::path& dir, const std::string& stem, const SpectralField& f) {
  for (int i = 0; i < 4; ++i) {
    std::ofstream os = open_out(dir / (stem + kScalarNames[i] + ".csv"));
    write_scalar_csv(os, f.grid, f.a[i]);
  }
}

int cmd_gen_data(const std::string& cfg_path, const std::string& out_dir) {
  const RunConfig cfg = load_config(cfg_path);
  fs::create_directories(out_dir);
  const SpectralField f = build_initial_field(cfg);
  write_field_csvs(out_dir, "", f);
  njson j;
  j["version"] = version_string;
  j["config"] = njson::parse(serialize_config(cfg));
  njson norms;
  for (int i = 0; i < 4; ++i)
    norms[kScalarNames[i]] = sobolev_norm(cfg.grid, f.a[i], cfg.data.norm_index);
  j["norm_index"] = cfg.data.norm_index;
  j["h_norms"] = norms;
  std::ofstream os = open_out(fs::path(out_dir) / "data_manifest.json");
  os << j.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const std::string& cfg_path, const std::string& out_dir, int cli_threads) {
  const RunConfig cfg = load_config(cfg_path);
  const int threads = resolve_threads(cli_threads, cfg);
  fs::create_directories(out_dir);
  const RunResult res = run_simulation(cfg, threads);
  {
    std::ofstream os = open_out(fs::path(out_dir) / "trajectory.csv");
    write_trajectory_csv(os, res);
  }
  {
    std::ofstream os = open_out(fs::path(out_dir) / "manifest.json");
    write_manifest(os, cfg, res);
  }
  if (cfg.emit_snapshots) {
    for (std::size_t io = 0; io < res.times.size(); ++io) {
      char stem[32];
      std::snprintf(stem, sizeof stem, "snap_%06zu_", io);
      write_field_csvs(out_dir, stem, materialize_state(res, io, cfg.par.gamma));
    }
  }
  std::cout << "wrote " << (fs::path(out_dir) / "trajectory.csv").string() << " ("
            << res.times.size() << " rows, " << res.n_modes() << " modes, " << res.total_steps
            << " steps, " << res.threads_used << " threads, " << res.wall_seconds << " s)\n";
  return 0;
}

int cmd_sweep(const std::vector<std::string>& files, const std::string& out_dir,
              int cli_threads) {
  if (files.empty()) throw validation_error("sweep: need at least one config");
  fs::create_directories(out_dir);
  std::ofstream os = open_out(fs::path(out_dir) / "summary.csv");
  os << "run,config,status,gamma,nu,M,s,constraint,t_end,slope_Pvx,slope_Pvy,slope_Qv,"
        "slope_rho,slope_theta,ed_rate_Qv,error\n";
  for (std::size_t i = 0; i < files.size(); ++i) {
    char run_name[32];
    std::snprintf(run_name, sizeof run_name, "run_%03zu", i);
    std::string error;
    double slope[5] = {NAN, NAN, NAN, NAN, NAN};
    double ed_rate = NAN;
    RunConfig cfg;
    bool have_cfg = false;
    try {
      cfg = load_config(files[i]);
      have_cfg = true;
      const int threads = resolve_threads(cli_threads, cfg);
      const RunResult res = run_simulation(cfg, threads);
      const fs::path rd = fs::path(out_dir) / run_name;
      fs::create_directories(rd);
      {
        std::ofstream ro = open_out(rd / "trajectory.csv");
        write_trajectory_csv(ro, res);
      }
      {
        std::ofstream ro = open_out(rd / "manifest.json");
        write_manifest(ro, cfg, res);
      }
      std::vector<double> t;
      t.reserve(res.records.size());
      for (const auto& r : res.records) t.push_back(r.t);
      auto grab = [&](double DiagnosticsRecord::* f) {
        std::vector<double> v;
        v.reserve(res.records.size());
        for (const auto& r : res.records) v.push_back(r.*f);
        return v;
      };
      double DiagnosticsRecord::* const fields[5] = {
          &DiagnosticsRecord::norm_Pvx, &DiagnosticsRecord::norm_Pvy,
          &DiagnosticsRecord::norm_Qv, &DiagnosticsRecord::norm_rho,
          &DiagnosticsRecord::norm_theta};
      for (int q = 0; q < 5; ++q) {
        try {
          slope[q] = power_law_slope(t, grab(fields[q]), 10.0, cfg.t_end).exponent_or_rate;
        } catch (const std::domain_error&) {
        }
      }
      try {
        ed_rate = exp_rate(t, grab(&DiagnosticsRecord::norm_Qv), std::cbrt(1.0 / cfg.par.nu),
                           cfg.t_end, 0.5)
                      .exponent_or_rate;
      } catch (const std::domain_error&) {
      }
    } catch (const std::exception& e) {
      error = e.what();
    }
    for (char& ch : error)
      if (ch == ',' || ch == '\n') ch = ';';
    char buf[1024];
    if (have_cfg) {
      std::snprintf(buf, sizeof buf,
                    "%s,%s,%s,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                    "%.17g,%s\n",
                    run_name, files[i].c_str(), error.empty() ? "ok" : "failed", cfg.par.gamma,
                    cfg.par.nu, cfg.par.M, cfg.par.s, cfg.constraint ? 1 : 0, cfg.t_end,
                    slope[0], slope[1], slope[2], slope[3], slope[4], ed_rate, error.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%s,%s,failed,,,,,,,,,,,,,%s\n", run_name,
                    files[i].c_str(), error.c_str());
    }
    os << buf;
  }
  return 0;
}

int cmd_fit_rates(const std::string& input, double t_lo, double t_hi, const std::string& mode,
                  double detrend, const std::string& out_path) {
  const Table tb = read_csv(input);
  const std::vector<double> t = column(tb, "t", input);
  if (t.empty()) throw validation_error(input + ": no data rows");
  if (t_hi < 0) t_hi = t.back();
  static const char* const names[] = {"norm_Pvx",  "norm_Pvy",           "norm_Qv",
                                      "norm_rho",  "norm_theta",         "norm_rho_plus_theta",
                                      "lemma_Q"};
  njson fits;
  for (const char* name : names) {
    const std::vector<double> v = column(tb, name, input);
    try {
      const FitResult f =
          mode == "exp" ? exp_rate(t, v, t_lo, t_hi, detrend) : power_law_slope(t, v, t_lo, t_hi);
      fits[name] = fit_to_json(f);
    } catch (const std::domain_error& e) {
      fits[name] = njson{{"error", e.what()}};
    }
  }
  njson j;
  j["input"] = input;
  j["mode"] = mode;
  j["window"] = {t_lo, t_hi};
  if (mode == "exp") j["detrend_power"] = detrend;
  j["fits"] = fits;
  emit_json(j, out_path);
  return 0;
}

int cmd_verify_energy(const std::string& cfg_path, int samples, double fd_dt,
                      std::uint64_t sample_seed, int cli_threads, bool check, double tol,
                      const std::string& out_path) {
  const RunConfig cfg = load_config(cfg_path);
  const int threads = resolve_threads(cli_threads, cfg);
  const RunResult res = run_simulation(cfg, threads);
  const std::vector<BalanceSample> bs =
      sample_energy_balance(res, cfg, samples, sample_seed, fd_dt);
  double worst = -1, mean = 0;
  const BalanceSample* worst_s = nullptr;
  for (const auto& b : bs) {
    mean += b.residual;
    if (b.residual > worst) {
      worst = b.residual;
      worst_s = &b;
    }
  }
  mean /= double(bs.size());
  njson j;
  j["samples"] = samples;
  j["fd_dt"] = fd_dt;
  j["sample_seed"] = sample_seed;
  j["max_residual"] = worst;
  j["mean_residual"] = mean;
  if (worst_s)
    j["worst"] = njson{{"k", worst_s->k}, {"eta", worst_s->eta}, {"t", worst_s->t}};
  if (check) j["tolerance"] = tol;
  emit_json(j, out_path);
  return check && !(worst <= tol) ? 3 : 0;
}

int cmd_audit_symbols(const AuditGrid& grid, bool check, const std::string& out_path) {
  const std::vector<AuditRow> rows = audit_symbols(grid);
  njson arr = njson::array();
  bool ok = true;
  for (const AuditRow& r : rows) {
    arr.push_back(njson{
        {"inequality", r.inequality},
        {"min_margin", r.min_margin},
        {"argmin", njson{{"t", r.argmin_t}, {"k", r.argmin_k}, {"eta", r.argmin_eta}}}});
    if (r.inequality == "dtp_vs_2k_sqrtp" && !(r.min_margin >= 0.0)) ok = false;
    if (r.inequality == "bracket" && !(r.min_margin >= 0.2)) ok = false;
    if (r.inequality == "crucial" && !(r.min_margin >= 0.5)) ok = false;
  }
  njson j;
  j["audit"] = arr;
  if (check)
    j["thresholds"] = njson{{"dtp_vs_2k_sqrtp", 0.0}, {"bracket", 0.2}, {"crucial", 0.5}};
  emit_json(j, out_path);
  return check && !ok ? 3 : 0;
}

int cmd_oracle_check(const std::string& cfg_path, int cli_threads, bool check, double tol,
                     const std::string& out_path) {
  const RunConfig cfg = load_config(cfg_path);
  const int threads = resolve_threads(cli_threads, cfg);
  const RunResult red = run_simulation(cfg, threads);
  const OracleResult full = run_full_oracle(cfg, threads);
  const OracleCompare cmp = compare_full_reduced(red, full);
  njson j;
  j["max_rel_diff"] = cmp.max_rel_diff;
  j["full_r1_max"] = cmp.full_r1_max;
  j["full_r2_max"] = cmp.full_r2_max;
  j["initial_h0_norm"] = red.initial_h0_norm;
  if (check) j["tolerance"] = tol;
  emit_json(j, out_path);
  return check && !(cmp.max_rel_diff <= tol) ? 3 : 0;
}

int cmd_zero_mode_check(const std::vector<double>& etas, double t_end, double dt, double gamma,
                        double nu, double mach, bool check, double tol,
                        const std::string& out_path) {
  FlowParams par;
  par.gamma = gamma;
  par.nu = nu;
  par.M = mach;
  validate(par, false);
  if (etas.empty()) throw validation_error("zero-mode-check: need at least one eta");
  if (!(dt > 0) || !(t_end > 0))
    throw validation_error("zero-mode-check: dt and t_end must be > 0");
  njson arr = njson::array();
  double worst = 0;
  for (double eta : etas) {
    ZeroModeState init;
    init.eta = eta;
    init.rho0 = cplx(1.0, 0.0);
    init.alpha0 = cplx(0.5, 0.0);
    init.omega0 = cplx(0.0, 0.0);
    init.theta0 = cplx(0.25, 0.0);
    ZeroModeState cur = init;
    double t = 0, dev_alpha = 0, dev_sum = 0;
    while (t < t_end - 0.5 * dt) {
      const double step = std::min(dt, t_end - t);
      cur = zero_mode_step(cur, step, par);
      t += step;
      dev_alpha =
          std::max(dev_alpha, std::abs(cur.alpha0 - zero_mode_alpha_closed(init, t, par)));
      dev_sum = std::max(dev_sum, std::abs(cur.rho0 + cur.theta0 -
                                           zero_mode_rho_plus_theta_closed(init, t, par)));
    }
    arr.push_back(njson{
        {"eta", eta}, {"max_dev_alpha", dev_alpha}, {"max_dev_rho_plus_theta", dev_sum}});
    worst = std::max({worst, dev_alpha, dev_sum});
  }
  njson j;
  j["t_end"] = t_end;
  j["dt"] = dt;
  j["max_deviation"] = worst;
  j["cases"] = arr;
  if (check) j["tolerance"] = tol;
  emit_json(j, out_path);
  return check && !(worst <= tol) ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"Per-mode spectral simulator for the linearized compressible shear flow"};
  app.set_version_flag("--version", std::string(version_string));
  app.require_subcommand(1);

  std::string cfg_path, out_dir, out_path, input, fit_mode = "power";
  std::vector<std::string> sweep_files;
  int cli_threads = -1, samples = 100;
  double t_lo = 10.0, t_hi = -1.0, detrend = 0.5, fd_dt = 1e-4, tol_energy = 1e-5;
  double tol_oracle = 1e-6, tol_zero = 1e-8, zm_t_end = 20.0, zm_dt = 1e-3;
  double zm_gamma = 1.4, zm_nu = 0.01, zm_M = 1.0;
  std::uint64_t sample_seed = 1;
  std::vector<double> zm_etas = {0.5, 1.0, 3.0};
  bool check = false;
  AuditGrid audit;

  CLI::App* gen = app.add_subcommand("gen-data", "write initial-data CSVs and a manifest");
  gen->add_option("-c,--config", cfg_path, "JSON config (defaults when omitted)");
  gen->add_option("-o,--out", out_dir, "output directory")->required();

  CLI::App* sim = app.add_subcommand("simulate", "run one configuration");
  sim->add_option("-c,--config", cfg_path, "JSON config (defaults when omitted)");
  sim->add_option("-o,--out", out_dir, "output directory")->required();
  sim->add_option("-t,--threads", cli_threads, "worker threads (0 = auto)");

  CLI::App* swp = app.add_subcommand("sweep", "run several configurations and tabulate rates");
  swp->add_option("configs", sweep_files, "config files")->required()->expected(-1);
  swp->add_option("-o,--out", out_dir, "output directory")->required();
  swp->add_option("-t,--threads", cli_threads, "worker threads (0 = auto)");

  CLI::App* fit = app.add_subcommand("fit-rates", "fit decay/growth rates of a trajectory CSV");
  fit->add_option("-i,--input", input, "trajectory CSV")->required();
  fit->add_option("--t-lo", t_lo, "window start (default 10)");
  fit->add_option("--t-hi", t_hi, "window end (default: last time)");
  fit->add_option("--mode", fit_mode, "power | exp")
      ->check(CLI::IsMember({"power", "exp"}));
  fit->add_option("--detrend", detrend, "detrend power for exp mode (default 0.5)");
  fit->add_option("-o,--out", out_path, "output JSON (stdout when omitted)");

  CLI::App* ver = app.add_subcommand("verify-energy", "spot-check the energy balance identity");
  ver->add_option("-c,--config", cfg_path, "JSON config (defaults when omitted)");
  ver->add_option("--samples", samples, "number of (mode, time) samples (default 100)");
  ver->add_option("--fd-dt", fd_dt, "finite-difference spacing (default 1e-4)");
  ver->add_option("--sample-seed", sample_seed, "sampling seed (default 1)");
  ver->add_option("-t,--threads", cli_threads, "worker threads (0 = auto)");
  ver->add_flag("--check", check, "exit 3 when the tolerance is violated");
  ver->add_option("--tol", tol_energy, "residual tolerance for --check (default 1e-5)");
  ver->add_option("-o,--out", out_path, "output JSON (stdout when omitted)");

  CLI::App* aud = app.add_subcommand("audit-symbols", "sample the symbol inequalities");
  aud->add_option("--t-max", audit.t_max, "audit horizon (default 1000)");
  aud->add_option("--t-step", audit.t_step, "time step (default 0.5)");
  aud->add_option("--k-min", audit.k_min, "lowest wavenumber (default 1)");
  aud->add_option("--k-max", audit.k_max, "highest wavenumber (default 8)");
  aud->add_option("--eta-max", audit.eta_max, "frequency half-width (default 32)");
  aud->add_option("--eta-step", audit.eta_step, "frequency step (default 0.25)");
  aud->add_option("--nu", audit.nu, "viscosity (default 0.01)");
  aud->add_flag("--check", check, "exit 3 when a margin is out of bounds");
  aud->add_option("-o,--out", out_path, "output JSON (stdout when omitted)");

  CLI::App* orc = app.add_subcommand("oracle-check",
                                     "compare reduced and four-variable trajectories");
  orc->add_option("-c,--config", cfg_path, "JSON config (defaults when omitted)");
  orc->add_option("-t,--threads", cli_threads, "worker threads (0 = auto)");
  orc->add_flag("--check", check, "exit 3 when the tolerance is violated");
  orc->add_option("--tol", tol_oracle, "relative tolerance for --check (default 1e-6)");
  orc->add_option("-o,--out", out_path, "output JSON (stdout when omitted)");

  CLI::App* zmc = app.add_subcommand("zero-mode-check",
                                     "integrate the zero mode against its closed form");
  zmc->add_option("--eta", zm_etas, "frequencies to test (default 0.5 1 3)");
  zmc->add_option("--t-end", zm_t_end, "horizon (default 20)");
  zmc->add_option("--dt", zm_dt, "step (default 1e-3)");
  zmc->add_option("--gamma", zm_gamma, "adiabatic exponent (default 1.4)");
  zmc->add_option("--nu", zm_nu, "viscosity (default 0.01)");
  zmc->add_option("--mach", zm_M, "Mach number (default 1)");
  zmc->add_flag("--check", check, "exit 3 when the tolerance is violated");
  zmc->add_option("--tol", tol_zero, "deviation tolerance for --check (default 1e-8)");
  zmc->add_option("-o,--out", out_path, "output JSON (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen_data(cfg_path, out_dir);
    if (sim->parsed()) return cmd_simulate(cfg_path, out_dir, cli_threads);
    if (swp->parsed()) return cmd_sweep(sweep_files, out_dir, cli_threads);
    if (fit->parsed()) return cmd_fit_rates(input, t_lo, t_hi, fit_mode, detrend, out_path);
    if (ver->parsed())
      return cmd_verify_energy(cfg_path, samples, fd_dt, sample_seed, cli_threads, check,
                               tol_energy, out_path);
    if (aud->parsed()) return cmd_audit_symbols(audit, check, out_path);
    if (orc->parsed()) return cmd_oracle_check(cfg_path, cli_threads, check, tol_oracle,
                                               out_path);
    if (zmc->parsed())
      return cmd_zero_mode_check(zm_etas, zm_t_end, zm_dt, zm_gamma, zm_nu, zm_M, check,
                                 tol_zero, out_path);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const integration_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
