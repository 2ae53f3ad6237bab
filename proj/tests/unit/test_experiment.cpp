#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "shortfair/errors.hpp"
#include "shortfair/experiment.hpp"

using namespace shortfair;

namespace {

// two fixed-rate users, one slot each, quarter-band demand
std::string base_config_json(const std::string& extra) {
  return std::string(R"({
    "n": 2,
    "n_max": 1,
    "demand": {"lower": ["1/4", "1/4"], "upper": ["3/4", "3/4"]},
    "window_lengths": [4, 8],
    "trials": 3,
    "strategies": ["orr", "tbs", "atbs"],
    "sampler": {"type": "fixed", "rates": [0.0, 1.0, 2.0]},
    "seed": 424242)") +
         extra + "\n}";
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("config parsing keeps shares exact and rejects sloppy input") {
  auto config = parse_config(base_config_json(""));
  CHECK(config.n == 2);
  CHECK(config.n_max == 1);
  CHECK(config.lower == std::vector<Rational>{Rational(1, 4), Rational(1, 4)});
  CHECK(config.upper == std::vector<Rational>{Rational(3, 4), Rational(3, 4)});
  CHECK(config.window_lengths == std::vector<int64_t>{4, 8});
  CHECK(config.trials == 3);
  CHECK(config.strategies == std::vector<std::string>{"orr", "tbs", "atbs"});
  CHECK(config.sampler.kind == SamplerSpec::Kind::fixed);
  CHECK(config.sampler.values == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(config.seed == 424242);
  CHECK_FALSE(config.thresholds.has_value());
  CHECK_NOTHROW(validate_config(config));

  CHECK_THROWS_AS(parse_config("not json"), config_error);
  CHECK_THROWS_AS(parse_config("[1,2]"), config_error);
  // decimal shares must be strings so they stay exact
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"n":2,"n_max":1,
        "demand":{"lower":[0.25,"1/4"],"upper":["3/4","3/4"]},
        "window_lengths":[4],"trials":1,"strategies":["atbs"],
        "sampler":{"type":"fixed","rates":[0,1,2]},"seed":1})"),
      "demand.lower[0]: write fractional shares as strings like \"0.2\" or \"1/5\"",
      config_error);
}

TEST_CASE("unknown or missing keys are named in the error") {
  CHECK_THROWS_WITH_AS(parse_config(base_config_json(R"(, "typo_key": 1)")),
                       "unknown key 'typo_key' in config", config_error);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"n":2,"n_max":1,
        "demand":{"lower":["1/4","1/4"],"upper":["3/4","3/4"],"middle":[]},
        "window_lengths":[4],"trials":1,"strategies":["atbs"],
        "sampler":{"type":"fixed","rates":[0,1,2]},"seed":1})"),
      "unknown key 'middle' in demand", config_error);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"n":2,"n_max":1,
        "demand":{"lower":["1/4","1/4"],"upper":["3/4","3/4"]},
        "window_lengths":[4],"trials":1,"strategies":["atbs"],
        "sampler":{"type":"fixed","rates":[0,1,2]}})"),
      "config needs 'seed'", config_error);
  CHECK_THROWS_AS(
      parse_config(R"({"n":2,"n_max":1,
        "demand":{"lower":["1/4","1/4"],"upper":["3/4","3/4"]},
        "window_lengths":[4.5],"trials":1,"strategies":["atbs"],
        "sampler":{"type":"fixed","rates":[0,1,2]},"seed":1})"),
      config_error);
}

TEST_CASE("validation checks strategies, windows, and sampler shape") {
  auto bad_strategy = parse_config(base_config_json(""));
  bad_strategy.strategies = {"orr", "sprint"};
  CHECK_THROWS_AS(validate_config(bad_strategy), config_error);

  auto duplicated = parse_config(base_config_json(""));
  duplicated.strategies = {"tbs", "tbs"};
  CHECK_THROWS_AS(validate_config(duplicated), config_error);

  auto infeasible = parse_config(base_config_json(""));
  infeasible.window_lengths = {4, 1};
  CHECK_THROWS_WITH_AS(validate_config(infeasible),
                       "window length 1 is infeasible: user 1: minimum count 1 "
                       "exceeds capacity 0",
                       config_error);

  auto short_rates = parse_config(base_config_json(""));
  short_rates.sampler.values = {0.0, 1.0};
  CHECK_THROWS_WITH_AS(validate_config(short_rates),
                       "sampler needs one entry per subset: expected 3, got 2", config_error);

  auto bad_thresholds = parse_config(base_config_json(R"(, "thresholds": [0.0])"));
  CHECK_THROWS_AS(validate_config(bad_thresholds), config_error);
}

TEST_CASE("fixed-rate experiment reproduces the hand-computed block exactly") {
  auto config = parse_config(base_config_json(R"(, "thresholds": [0.0, 0.0])"));
  auto result = run_experiment(config, 1);

  const std::string expected =
      "s,strategy,mean_utility,ci_half,violations,stop_frac,wald_lb,thm4_lb\n"
      "4,orr,0.75,0,0,1,0,0\n"
      "8,orr,0.75,0,0,1,0,0\n"
      "4,tbs,2,0,3,1,0,0\n"
      "8,tbs,2,0,3,1,0,0\n"
      "4,atbs,1.75,0,0,1,2,0\n"
      "8,atbs,1.75,0,0,0.875,1.75,0\n"
      "0,tbs-longterm,2,0,0,1,0,0\n";
  CHECK(result.csv == expected);

  REQUIRE(result.rows.size() == 7);
  CHECK(result.rows.back().strategy == "tbs-longterm");
  CHECK(result.rows.back().s == 0);
  // thresholds (0,0) starve user 1, so the given-thresholds path is honest
  CHECK_FALSE(result.calibration.converged);
  CHECK(result.calibration.u_estimate == 2.0);
}

TEST_CASE("worker count never changes the output bytes") {
  auto config = parse_config(base_config_json(R"(, "thresholds": [0.0, 0.0])"));
  config.sampler.kind = SamplerSpec::Kind::exponential;  // make trials actually random
  auto one = run_experiment(config, 1);
  auto four = run_experiment(config, 4);
  auto redo = run_experiment(config, 4);
  CHECK(one.csv == four.csv);
  CHECK(four.csv == redo.csv);
}

TEST_CASE("calibrated runs on fixed rates settle the flip and stay fair") {
  auto config = parse_config(base_config_json(""));
  config.strategies = {"atbs"};
  config.window_lengths = {4};
  config.trials = 2;
  auto result = run_experiment(config, 1);
  CHECK(result.calibration.converged);
  CHECK(result.calibration.atomic_tie);
  CHECK(result.calibration.u_estimate == doctest::Approx(1.75).epsilon(1e-9));
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].violations == 0);
}

TEST_CASE("trace CSV lists slot, label, rate, and running counts") {
  auto cat = VirtualUserCatalog::enumerate(2, 1);
  ScheduleTrace trace(3);
  trace.record(cat.index_of(0b10), 2.0);
  trace.record(cat.index_of(0b01), 1.0);
  trace.record(0, 0.0);
  CHECK(trace_to_csv(trace, cat) ==
        "slot,subset,rate,count_1,count_2\n"
        "1,2,2,0,1\n"
        "2,1,1,1,1\n"
        "3,-,0,1,1\n");
}

TEST_CASE("cell sampler construction drops users deterministically") {
  std::string cell_json = R"({
    "n": 5,
    "n_max": 2,
    "demand": {"lower": ["1/5","1/5","1/5","1/5","1/5"],
               "upper": ["1","1","1","1","1"]},
    "window_lengths": [10],
    "trials": 2,
    "strategies": ["atbs"],
    "sampler": {"type": "cell"},
    "seed": 99
  })";
  auto config = parse_config(cell_json);
  CHECK_NOTHROW(validate_config(config));
  auto cat = VirtualUserCatalog::enumerate(5, 2);
  std::vector<UserChannelState> users_a, users_b;
  auto sampler_a = build_sampler(config, cat, &users_a);
  auto sampler_b = build_sampler(config, cat, &users_b);
  CHECK(sampler_a->m() == cat.m());
  REQUIRE(users_a.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(users_a[i].distance_m == users_b[i].distance_m);
    CHECK(users_a[i].mean_snr_db == users_b[i].mean_snr_db);
  }

  auto pairs_only = config;
  pairs_only.n_max = 3;
  CHECK_THROWS_AS(validate_config(pairs_only), config_error);
}

TEST_CASE("demand files carry exactly the three allowed keys") {
  const char* path = "tmp_demand_unit.json";
  {
    std::ofstream out(path);
    out << R"({"n":2,"n_max":1,
               "demand":{"lower":["1/4","1/4"],"upper":["3/4","3/4"]}})";
  }
  auto spec = load_demand_file(path);
  CHECK(spec.n == 2);
  CHECK(spec.n_max == 1);
  CHECK(spec.lower[0] == Rational(1, 4));
  {
    std::ofstream out(path);
    out << R"({"n":2,"n_max":1,"seed":4,
               "demand":{"lower":["1/4","1/4"],"upper":["3/4","3/4"]}})";
  }
  CHECK_THROWS_WITH_AS(load_demand_file(path), "unknown key 'seed' in demand file",
                       config_error);
  {
    std::ofstream out(path);
    out << R"({"n":3,"n_max":1,
               "demand":{"lower":["1/4","1/4"],"upper":["3/4","3/4"]}})";
  }
  CHECK_THROWS_WITH_AS(load_demand_file(path), "demand lists must have exactly n entries",
                       config_error);
  std::remove(path);
  CHECK_THROWS_AS(load_demand_file("no_such_file_anywhere.json"), config_error);
}

TEST_SUITE_END();
