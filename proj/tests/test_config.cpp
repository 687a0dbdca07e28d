#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "hawkesim/config.hpp"
#include "hawkesim/errors.hpp"
#include "hawkesim/experiments.hpp"
#include "hawkesim/io.hpp"

using namespace hawkesim;

namespace {

const char* kFullConfig =
    "# reference two-state model\n"
    "[model]\n"
    "lambda = 1\n"
    "kernel = exponential\n"
    "alpha = 0.5\n"
    "beta = 1\n"
    "P = 0.6 0.4   ; rows continue on indented lines\n"
    "    0.3 0.7\n"
    "a = 1 -1\n"
    "s0 = 0\n"
    "u = 1.5\n"
    "c = 2\n"
    "\n"
    "[market]\n"
    "r = 0.02\n"
    "asset_drift = 0.07\n"
    "asset_vol = 0.3\n"
    "x0 = 1\n"
    "\n"
    "[run]\n"
    "kind = params\n"
    "T = 10\n"
    "n_paths = 50\n"
    "seed = 42\n"
    "pi_grid = 0 0.5 1\n"
    "level = 0.05\n"
    "mode = jump\n";

double extract_number(const std::string& json, const std::string& key) {
  const std::string needle = "\"" + key + "\": ";
  const std::size_t pos = json.find(needle);
  REQUIRE(pos != std::string::npos);
  return std::strtod(json.c_str() + pos + needle.size(), nullptr);
}

std::string strip_generated_at(const std::string& json) {
  std::string out;
  std::size_t start = 0;
  while (start < json.size()) {
    std::size_t end = json.find('\n', start);
    if (end == std::string::npos) end = json.size();
    const std::string line = json.substr(start, end - start);
    if (line.find("generated_at") == std::string::npos) {
      out += line;
      out += '\n';
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("parse_config reads sections, matrices and comments") {
  const ExperimentConfig cfg = parse_config(kFullConfig);
  CHECK(cfg.model.lambda0 == 1.0);
  CHECK(cfg.model.kernel == "exponential");
  CHECK(cfg.model.alpha == 0.5);
  REQUIRE(cfg.model.P.size() == 2);
  CHECK(cfg.model.P[0] == std::vector<double>{0.6, 0.4});
  CHECK(cfg.model.P[1] == std::vector<double>{0.3, 0.7});
  CHECK(cfg.model.a == std::vector<double>{1.0, -1.0});
  CHECK(cfg.model.u == 1.5);
  CHECK(cfg.market.r == 0.02);
  CHECK(cfg.market.asset_vol == 0.3);
  REQUIRE(cfg.run.kind.has_value());
  CHECK(*cfg.run.kind == ExperimentKind::params);
  CHECK(cfg.run.horizon == 10.0);
  CHECK(cfg.run.seed == 42);
  CHECK(cfg.run.pi_grid == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(cfg.run.level == 0.05);
  CHECK(cfg.run.mode == "jump");
}

TEST_CASE("config round-trips through serialize") {
  const ExperimentConfig cfg = parse_config(kFullConfig);
  const ExperimentConfig again = parse_config(serialize_config(cfg));
  CHECK(again == cfg);
  // And the serialized form is a fixed point.
  CHECK(serialize_config(again) == serialize_config(cfg));
}

TEST_CASE("parse_config rejects malformed input") {
  CHECK_THROWS_AS(parse_config("[model]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\nlambda = 1\nlambda = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\nlambda = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("lambda = 1\n"), ConfigError);           // key before any section
  CHECK_THROWS_AS(parse_config("[model\nlambda = 1\n"), ConfigError);   // malformed header
  CHECK_THROWS_AS(parse_config("[weird]\nx = 1\n"), ConfigError);       // unknown section
  CHECK_THROWS_AS(parse_config("[run]\nkind = nonsense\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ndt = 0.1\nn_steps = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nT = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nlevel = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nn_paths = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\nkernel = gamma\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nmode = teleport\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("   0.3 0.7\n"), ConfigError);           // continuation without key
}

TEST_CASE("resolved_n_steps prefers n_steps, then dt, then the default") {
  ExperimentConfig cfg;
  CHECK(cfg.resolved_n_steps() == 1000);
  cfg.run.horizon = 2.0;
  cfg.run.dt = 0.01;
  CHECK(cfg.resolved_n_steps() == 200);
  cfg.run.dt.reset();
  cfg.run.n_steps = 37;
  CHECK(cfg.resolved_n_steps() == 37);
}

TEST_CASE("typed builders wrap validation in ConfigError") {
  ExperimentConfig cfg = parse_config(kFullConfig);
  CHECK_THROWS_AS(chain_from_config(ExperimentConfig{}), ConfigError);  // P unset
  cfg.model.P = {{0.5, 0.6}, {0.5, 0.5}};                               // row sum off
  CHECK_THROWS_AS(chain_from_config(cfg), ConfigError);
  ExperimentConfig bad_lambda = parse_config(kFullConfig);
  bad_lambda.model.lambda0 = 0.0;
  CHECK_THROWS_AS(hawkes_from_config(bad_lambda), ConfigError);
}

TEST_CASE("run_experiment on kind=params emits the parameter object") {
  ExperimentConfig cfg = parse_config(kFullConfig);
  const ExperimentReport report = run_experiment(cfg);
  CHECK(report.kind == ExperimentKind::params);
  CHECK(report.result_json.find("\"a_star\"") != std::string::npos);
  CHECK(report.result_json.find("\"sigma_bar\"") != std::string::npos);
  CHECK(report.result_json.find("\"mu_hat\": 0.5") != std::string::npos);
  CHECK(report.json.find("\"kind\": \"params\"") != std::string::npos);
  CHECK(report.json.find("\"generated_at\"") != std::string::npos);
  CHECK(report.json.find("\"result\"") != std::string::npos);
  CHECK(report.csv_files.empty());
}

TEST_CASE("run_experiment requires a kind") {
  ExperimentConfig cfg = parse_config(kFullConfig);
  cfg.run.kind.reset();
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("run_experiment reports are deterministic up to the timestamp") {
  ExperimentConfig cfg = parse_config(kFullConfig);
  cfg.run.kind = ExperimentKind::lln_gchp;
  cfg.run.horizon = 30.0;
  cfg.run.n_paths = 10;
  ExperimentOptions opts;
  opts.csv = true;
  const ExperimentReport a = run_experiment(cfg, opts);
  const ExperimentReport b = run_experiment(cfg, opts);
  CHECK(strip_generated_at(a.json) == strip_generated_at(b.json));
  REQUIRE(a.csv_files.size() == 2);
  CHECK(a.csv_files[0].first == "statistics.csv");
  CHECK(a.csv_files[0].second == b.csv_files[0].second);
  CHECK(a.csv_files[1].first == "sample_path.csv");
  CHECK(a.csv_files[1].second.rfind("time,state,mark,cumulative\n", 0) == 0);

  // A different seed changes the result.
  cfg.run.seed = 43;
  const ExperimentReport c = run_experiment(cfg, opts);
  CHECK(strip_generated_at(a.json) != strip_generated_at(c.json));
}

TEST_CASE("run_experiment finance kind reports the closed form and grid") {
  // Marks 0 and 0.5 on iid coin-flip rows keep every moment exact in binary:
  // drift 0.25, sigma_bar^2 0.125, mu_e 0.3125, so pi_star is exactly 2.5.
  ExperimentConfig cfg;
  cfg.model.lambda0 = 1.0;
  cfg.model.kernel = "zero";
  cfg.model.P = {{0.5, 0.5}, {0.5, 0.5}};
  cfg.model.a = {0.0, 0.5};
  cfg.market.r = 0.0;
  cfg.market.x0 = 1.0;
  cfg.run.kind = ExperimentKind::finance_opt;
  cfg.run.horizon = 1.0;
  cfg.run.n_paths = 2000;
  cfg.run.seed = 7;
  cfg.run.pi_grid = {0.0, 1.25, 2.5, 3.75, 5.0};
  const ExperimentReport report = run_experiment(cfg);
  CHECK(extract_number(report.result_json, "pi_star") == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(report.result_json.find("\"argmax_pi\": 2.5") != std::string::npos);
  const std::size_t at = report.result_json.find("\"pi\": 2.5");
  REQUIRE(at != std::string::npos);
  CHECK(extract_number(report.result_json.substr(at), "utility_analytic") ==
        doctest::Approx(0.390625).epsilon(1e-12));

  // Without a grid the argmax is null.
  cfg.run.pi_grid.clear();
  const ExperimentReport bare = run_experiment(cfg);
  CHECK(bare.result_json.find("\"argmax_pi\": null") != std::string::npos);
}

TEST_CASE("fmt_double renders round-trippable decimals") {
  CHECK(fmt_double(1.0) == "1");
  CHECK(fmt_double(0.1) == "0.10000000000000001");
  CHECK(fmt_double(-2.5) == "-2.5");
  CHECK(fmt_double(std::nan("")) == "null");
  CHECK(fmt_double(INFINITY) == "null");
}

TEST_CASE("JsonWriter renders nested structures with stable layout") {
  JsonWriter w;
  w.begin_object();
  w.key("name").value("a\"b\\c\nd");
  w.key("count").value(3);
  w.key("items");
  w.begin_array();
  w.value(1.5);
  w.null();
  w.begin_object();
  w.key("flag").value(true);
  w.end_object();
  w.end_array();
  w.key("empty");
  w.begin_object();
  w.end_object();
  w.end_object();
  const std::string expected =
      "{\n"
      "  \"name\": \"a\\\"b\\\\c\\nd\",\n"
      "  \"count\": 3,\n"
      "  \"items\": [\n"
      "    1.5,\n"
      "    null,\n"
      "    {\n"
      "      \"flag\": true\n"
      "    }\n"
      "  ],\n"
      "  \"empty\": {}\n"
      "}";
  CHECK(w.str() == expected);
}

TEST_CASE("csv writers") {
  const EventPath events(1.0, {0.25, 0.5});
  CHECK(event_path_csv(events) == "time\n0.25\n0.5\n");

  SampledPath wealth;
  wealth.times = {0.0, 0.5};
  wealth.values = {1.0, 1.25};
  CHECK(wealth_path_csv(wealth) == "step,time,wealth\n0,0,1\n1,0.5,1.25\n");

  SurplusPath surplus;
  surplus.times = {0.0, 0.5, 1.0};
  surplus.values = {1.0, 0.25, -0.5};
  surplus.ruined = true;
  surplus.ruin_time = 1.0;
  CHECK(surplus_path_csv(surplus) ==
        "step,time,surplus,ruined\n0,0,1,0\n1,0.5,0.25,0\n2,1,-0.5,1\n");

  MarkedEventPath marked;
  marked.horizon = 1.0;
  marked.times = {0.5};
  marked.states = {2};
  marked.marks = {-1.0};
  marked.cumulative = {-1.0};
  CHECK(marked_event_path_csv(marked) == "time,state,mark,cumulative\n0.5,2,-1,-1\n");
}

TEST_CASE("iso timestamp shape") {
  const std::string ts = iso_timestamp_utc();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}

TEST_CASE("experiment kind names round-trip") {
  for (ExperimentKind kind :
       {ExperimentKind::lln_hp, ExperimentKind::fclt_hp, ExperimentKind::lln_gchp,
        ExperimentKind::fclt_gchp, ExperimentKind::params, ExperimentKind::finance_opt,
        ExperimentKind::insurance_opt, ExperimentKind::ruin}) {
    CHECK(experiment_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(experiment_kind_from_string("unknown"), ConfigError);
}
