#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "couette/config.hpp"
#include "couette/errors.hpp"

using namespace couette;

TEST_CASE("empty document yields the reference configuration") {
  RunConfig c = parse_config("{}");
  CHECK(c.par.gamma == 1.4);
  CHECK(c.par.nu == 0.01);
  CHECK(c.par.M == 1.0);
  CHECK(c.par.s == 1.5);
  CHECK(c.grid.K == 8);
  CHECK(c.grid.eta_max == 32.0);
  CHECK(c.grid.delta_eta == 0.25);
  CHECK(c.data.seed == 42);
  CHECK(c.data.spectrum_decay == 3.0);
  CHECK(c.constraint == false);
  CHECK(c.t_end == 100.0);
  REQUIRE(c.output_times.size() == 201);
  CHECK(c.output_times.front() == 0.0);
  CHECK(c.output_times.back() == 100.0);
  CHECK(c.output_times[101] == 50.5);
  CHECK(c.threads == 0);
}

TEST_CASE("scalar overrides land in the right fields") {
  RunConfig c = parse_config(R"({"gamma": 1.6, "nu": 0.001, "M": 0.5, "s": 2.0,
    "grid": {"K": 4, "eta_max": 8.0, "delta_eta": 0.5},
    "data": {"seed": 7, "k_min": 2, "k_max": 3, "eta_band": 4.0, "spectrum_decay": 2.0,
             "target_norm": 0.5, "norm_index": 2.0},
    "constraint": true, "t_end": 10.0, "dt_max": 0.02, "safety": 0.2,
    "output_dt": 2.0, "threads": 3})");
  CHECK(c.par.gamma == 1.6);
  CHECK(c.par.nu == 0.001);
  CHECK(c.par.M == 0.5);
  CHECK(c.par.s == 2.0);
  CHECK(c.grid.K == 4);
  CHECK(c.grid.n_eta == 33);
  CHECK(c.data.seed == 7);
  CHECK(c.data.k_min == 2);
  CHECK(c.data.k_max == 3);
  CHECK(c.data.target_norm == 0.5);
  CHECK(c.constraint == true);
  CHECK(c.threads == 3);
  // constructed instants: 0, 2, ..., 8, then t_end
  std::vector<double> want{0, 2, 4, 6, 8, 10};
  CHECK(c.output_times == want);
}

TEST_CASE("hypothesis violations name the key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"nu": 1.5})"), doctest::Contains("nu"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gamma": 0.9})"), doctest::Contains("gamma"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"M": 200.0})"), doctest::Contains("M"),
                       validation_error);
  // the escape hatch downgrades them
  RunConfig c = parse_config(R"({"nu": 1.5, "allow_hypothesis_violation": true})");
  CHECK(c.par.nu == 1.5);
}

TEST_CASE("unknown keys are rejected with their dotted path") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"bogus": 1})"), doctest::Contains("unknown key bogus"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"foo": 1}})"),
                       doctest::Contains("grid.foo"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"sigma": 1}})"),
                       doctest::Contains("data.sigma"), validation_error);
}

TEST_CASE("type errors are reported per key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"t_end": "soon"})"), doctest::Contains("t_end"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"constraint": 1})"), doctest::Contains("constraint"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"K": 2.5}})"), doctest::Contains("grid.K"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"threads": -2})"), doctest::Contains("threads"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"threads": "many"})"), doctest::Contains("threads"),
                       validation_error);
  CHECK_THROWS_AS(parse_config("{"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config("[1,2]"), doctest::Contains("object"), validation_error);
}

TEST_CASE("explicit output times") {
  RunConfig c = parse_config(R"({"t_end": 2.0, "output_times": [0, 0.5, 2.0]})");
  CHECK(c.explicit_output_times);
  std::vector<double> want{0, 0.5, 2.0};
  CHECK(c.output_times == want);

  CHECK_THROWS_WITH_AS(parse_config(R"({"t_end": 2.0, "output_times": [0.5, 2.0]})"),
                       doctest::Contains("start at 0"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"t_end": 2.0, "output_times": [0, 1.5, 1.0, 2.0]})"),
                       doctest::Contains("ascending"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"t_end": 2.0, "output_times": [0, 1.0]})"),
                       doctest::Contains("end at t_end"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"t_end": 2.0, "output_times": []})"),
                       doctest::Contains("nonempty"), validation_error);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"t_end": 2.0, "output_dt": 1.0, "output_times": [0, 2.0]})"),
      doctest::Contains("mutually exclusive"), validation_error);
}

TEST_CASE("t_end zero collapses the schedule to the initial instant") {
  RunConfig c = parse_config(R"({"t_end": 0.0})");
  REQUIRE(c.output_times.size() == 1);
  CHECK(c.output_times[0] == 0.0);
}

TEST_CASE("range validation") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"t_end": -1.0})"), doctest::Contains("t_end"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"dt_max": 0.0})"), doctest::Contains("dt_max"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"safety": -0.1})"), doctest::Contains("safety"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"output_dt": 0.0})"), doctest::Contains("output_dt"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"K": 0}})"), doctest::Contains("K"),
                       validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"k_max": 9}})"),
                       doctest::Contains("data.k_max"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"eta_band": 64.0}})"),
                       doctest::Contains("data.eta_band"), validation_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"target_norm": 0.0}})"),
                       doctest::Contains("data.target_norm"), validation_error);
}

TEST_CASE("serialize round trips") {
  for (const char* text :
       {"{}", R"({"gamma": 1.6, "nu": 0.001, "constraint": true, "t_end": 12.5})",
        R"({"t_end": 2.0, "output_times": [0, 0.7071067811865476, 2.0]})",
        R"({"grid": {"K": 3, "eta_max": 6.0, "delta_eta": 0.125},
            "data": {"k_max": 3, "eta_band": 6.0}, "threads": 2})"}) {
    RunConfig a = parse_config(text);
    RunConfig b = parse_config(serialize_config(a));
    CHECK(b.par.gamma == a.par.gamma);
    CHECK(b.par.nu == a.par.nu);
    CHECK(b.par.M == a.par.M);
    CHECK(b.par.s == a.par.s);
    CHECK(b.grid.K == a.grid.K);
    CHECK(b.grid.eta_max == a.grid.eta_max);
    CHECK(b.grid.delta_eta == a.grid.delta_eta);
    CHECK(b.data.seed == a.data.seed);
    CHECK(b.data.k_min == a.data.k_min);
    CHECK(b.data.k_max == a.data.k_max);
    CHECK(b.data.eta_band == a.data.eta_band);
    CHECK(b.data.spectrum_decay == a.data.spectrum_decay);
    CHECK(b.data.target_norm == a.data.target_norm);
    CHECK(b.data.norm_index == a.data.norm_index);
    CHECK(b.constraint == a.constraint);
    CHECK(b.t_end == a.t_end);
    CHECK(b.dt_max == a.dt_max);
    CHECK(b.safety == a.safety);
    CHECK(b.output_times == a.output_times);
    CHECK(b.explicit_output_times == a.explicit_output_times);
    CHECK(b.emit_snapshots == a.emit_snapshots);
    CHECK(b.threads == a.threads);
  }
  // threads 0 is spelled "auto"
  CHECK(serialize_config(parse_config("{}")).find("\"threads\": \"auto\"") !=
        std::string::npos);
}

TEST_CASE("thread resolution precedence") {
  unsetenv("COUETTE_THREADS");
  RunConfig c = parse_config(R"({"threads": 3})");
  CHECK(resolve_threads(-1, c) == 3);   // config value
  CHECK(resolve_threads(2, c) == 2);    // CLI beats config
  setenv("COUETTE_THREADS", "5", 1);
  CHECK(resolve_threads(-1, c) == 5);   // environment beats config
  CHECK(resolve_threads(2, c) == 2);    // CLI beats environment
  setenv("COUETTE_THREADS", "auto", 1);
  CHECK(resolve_threads(-1, c) >= 1);   // auto resolves to a positive count
  setenv("COUETTE_THREADS", "none", 1);
  CHECK_THROWS_AS(resolve_threads(-1, c), validation_error);
  setenv("COUETTE_THREADS", "3x", 1);
  CHECK_THROWS_AS(resolve_threads(-1, c), validation_error);
  unsetenv("COUETTE_THREADS");
  RunConfig d = parse_config("{}");
  CHECK(resolve_threads(-1, d) >= 1);  // threads 0 means hardware concurrency
  CHECK(resolve_threads(0, d) >= 1);
}

TEST_CASE("step_control mirrors the run parameters") {
  RunConfig c = parse_config(R"({"t_end": 5.0, "dt_max": 0.02, "safety": 0.3})");
  StepControl ctrl = step_control(c);
  CHECK(ctrl.dt_max == 0.02);
  CHECK(ctrl.safety == 0.3);
  CHECK(ctrl.t_end == 5.0);
  CHECK(ctrl.output_times == c.output_times);
}
