#include "couette/config.hpp"

#include <cstdlib>
#include <set>
#include <thread>

#include "json.hpp"

#include "couette/errors.hpp"

namespace couette {

using njson = nlohmann::ordered_json;

namespace {

void reject_unknown(const njson& obj, const std::string& prefix,
                    const std::set<std::string>& known) {
  for (const auto& item : obj.items())
    if (!known.count(item.key()))
      throw validation_error("config: unknown key " + prefix + item.key());
}

double get_num(const njson& j, const std::string& path) {
  if (!j.is_number()) throw validation_error("config: " + path + " must be a number");
  return j.get<double>();
}

int get_int(const njson& j, const std::string& path) {
  if (!j.is_number_integer()) throw validation_error("config: " + path + " must be an integer");
  return j.get<int>();
}

bool get_bool(const njson& j, const std::string& path) {
  if (!j.is_boolean()) throw validation_error("config: " + path + " must be a boolean");
  return j.get<bool>();
}

} // namespace

RunConfig default_config() {
  RunConfig c;
  c.grid = build_grid(8, 32.0, 0.25);
  c.output_times.reserve(201);
  for (int i = 0; i <= 200; ++i) c.output_times.push_back(0.5 * i);
  return c;
}

RunConfig parse_config(const std::string& text) {
  njson j;
  try {
    j = njson::parse(text);
  } catch (const njson::parse_error& e) {
    throw validation_error(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw validation_error("config: document must be a JSON object");
  reject_unknown(j, "",
                 {"gamma", "nu", "M", "s", "grid", "data", "constraint", "t_end", "dt_max",
                  "safety", "output_dt", "output_times", "emit_snapshots", "threads",
                  "allow_hypothesis_violation"});

  RunConfig c;
  if (j.count("gamma")) c.par.gamma = get_num(j["gamma"], "gamma");
  if (j.count("nu")) c.par.nu = get_num(j["nu"], "nu");
  if (j.count("M")) c.par.M = get_num(j["M"], "M");
  if (j.count("s")) c.par.s = get_num(j["s"], "s");

  int K = 8;
  double eta_max = 32.0, delta_eta = 0.25;
  if (j.count("grid")) {
    const njson& g = j["grid"];
    if (!g.is_object()) throw validation_error("config: grid must be an object");
    reject_unknown(g, "grid.", {"K", "eta_max", "delta_eta"});
    if (g.count("K")) K = get_int(g["K"], "grid.K");
    if (g.count("eta_max")) eta_max = get_num(g["eta_max"], "grid.eta_max");
    if (g.count("delta_eta")) delta_eta = get_num(g["delta_eta"], "grid.delta_eta");
  }
  c.grid = build_grid(K, eta_max, delta_eta);

  if (j.count("data")) {
    const njson& d = j["data"];
    if (!d.is_object()) throw validation_error("config: data must be an object");
    reject_unknown(d, "data.",
                   {"seed", "k_min", "k_max", "eta_band", "spectrum_decay", "target_norm",
                    "norm_index"});
    if (d.count("seed")) {
      if (!d["seed"].is_number_integer() && !d["seed"].is_number_unsigned())
        throw validation_error("config: data.seed must be an integer");
      c.data.seed = d["seed"].get<std::uint64_t>();
    }
    if (d.count("k_min")) c.data.k_min = get_int(d["k_min"], "data.k_min");
    if (d.count("k_max")) c.data.k_max = get_int(d["k_max"], "data.k_max");
    if (d.count("eta_band")) c.data.eta_band = get_num(d["eta_band"], "data.eta_band");
    if (d.count("spectrum_decay"))
      c.data.spectrum_decay = get_num(d["spectrum_decay"], "data.spectrum_decay");
    if (d.count("target_norm")) c.data.target_norm = get_num(d["target_norm"], "data.target_norm");
    if (d.count("norm_index")) c.data.norm_index = get_num(d["norm_index"], "data.norm_index");
  }

  if (j.count("constraint")) c.constraint = get_bool(j["constraint"], "constraint");
  if (j.count("t_end")) c.t_end = get_num(j["t_end"], "t_end");
  if (j.count("dt_max")) c.dt_max = get_num(j["dt_max"], "dt_max");
  if (j.count("safety")) c.safety = get_num(j["safety"], "safety");
  if (j.count("output_dt")) c.output_dt = get_num(j["output_dt"], "output_dt");
  if (j.count("emit_snapshots")) c.emit_snapshots = get_bool(j["emit_snapshots"], "emit_snapshots");
  if (j.count("allow_hypothesis_violation"))
    c.allow_hypothesis_violation =
        get_bool(j["allow_hypothesis_violation"], "allow_hypothesis_violation");

  if (j.count("threads")) {
    const njson& t = j["threads"];
    if (t.is_string()) {
      if (t.get<std::string>() != "auto")
        throw validation_error("config: threads must be an integer or \"auto\"");
      c.threads = 0;
    } else {
      c.threads = get_int(t, "threads");
      if (c.threads < 0) throw validation_error("config: threads must be >= 0");
    }
  }

  validate(c.par, c.allow_hypothesis_violation);

  if (c.data.k_min < 1) throw validation_error("config: data.k_min must be >= 1");
  if (c.data.k_max < c.data.k_min) throw validation_error("config: data.k_max below data.k_min");
  if (c.data.k_max > c.grid.K) throw validation_error("config: data.k_max exceeds grid.K");
  if (!(c.data.eta_band >= 0)) throw validation_error("config: data.eta_band must be >= 0");
  if (c.data.eta_band > c.grid.eta_max)
    throw validation_error("config: data.eta_band exceeds grid.eta_max");
  if (!(c.data.spectrum_decay >= 0))
    throw validation_error("config: data.spectrum_decay must be >= 0");
  if (!(c.data.target_norm > 0)) throw validation_error("config: data.target_norm must be > 0");

  if (!(c.t_end >= 0)) throw validation_error("config: t_end must be >= 0");
  if (!(c.dt_max > 0)) throw validation_error("config: dt_max must be > 0");
  if (!(c.safety > 0)) throw validation_error("config: safety must be > 0");
  if (!(c.output_dt > 0)) throw validation_error("config: output_dt must be > 0");

  c.output_times.clear();
  if (j.count("output_times")) {
    if (j.count("output_dt"))
      throw validation_error("config: output_times is mutually exclusive with output_dt");
    const njson& ot = j["output_times"];
    if (!ot.is_array() || ot.empty())
      throw validation_error("config: output_times must be a nonempty array");
    for (std::size_t i = 0; i < ot.size(); ++i)
      c.output_times.push_back(get_num(ot[i], "output_times"));
    if (c.output_times.front() != 0.0)
      throw validation_error("config: output_times must start at 0");
    for (std::size_t i = 1; i < c.output_times.size(); ++i)
      if (!(c.output_times[i] > c.output_times[i - 1]))
        throw validation_error("config: output_times must be strictly ascending");
    if (c.output_times.back() != c.t_end)
      throw validation_error("config: output_times must end at t_end");
    c.explicit_output_times = true;
  } else {
    for (std::size_t i = 0;; ++i) {
      const double t = double(i) * c.output_dt;
      if (t >= c.t_end) break;
      c.output_times.push_back(t);
    }
    c.output_times.push_back(c.t_end);
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  njson j;
  j["gamma"] = c.par.gamma;
  j["nu"] = c.par.nu;
  j["M"] = c.par.M;
  j["s"] = c.par.s;
  j["grid"] = {{"K", c.grid.K}, {"eta_max", c.grid.eta_max}, {"delta_eta", c.grid.delta_eta}};
  j["data"] = {{"seed", c.data.seed},
               {"k_min", c.data.k_min},
               {"k_max", c.data.k_max},
               {"eta_band", c.data.eta_band},
               {"spectrum_decay", c.data.spectrum_decay},
               {"target_norm", c.data.target_norm},
               {"norm_index", c.data.norm_index}};
  j["constraint"] = c.constraint;
  j["t_end"] = c.t_end;
  j["dt_max"] = c.dt_max;
  j["safety"] = c.safety;
  if (c.explicit_output_times)
    j["output_times"] = c.output_times;
  else
    j["output_dt"] = c.output_dt;
  j["emit_snapshots"] = c.emit_snapshots;
  if (c.threads == 0)
    j["threads"] = "auto";
  else
    j["threads"] = c.threads;
  j["allow_hypothesis_violation"] = c.allow_hypothesis_violation;
  return j.dump(2) + "\n";
}

int resolve_threads(int cli_threads, const RunConfig& c) {
  int t = c.threads;
  if (const char* env = std::getenv("COUETTE_THREADS")) {
    const std::string s(env);
    if (s == "auto") {
      t = 0;
    } else {
      try {
        std::size_t pos = 0;
        t = std::stoi(s, &pos);
        if (pos != s.size() || t < 0) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw validation_error("COUETTE_THREADS: must be a nonnegative integer or \"auto\"");
      }
    }
  }
  if (cli_threads >= 0) t = cli_threads;
  if (t == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    t = hc ? int(hc) : 1;
  }
  return t;
}

StepControl step_control(const RunConfig& c) {
  StepControl ctrl;
  ctrl.dt_max = c.dt_max;
  ctrl.safety = c.safety;
  ctrl.t_end = c.t_end;
  ctrl.output_times = c.output_times;
  return ctrl;
}

} // namespace couette
