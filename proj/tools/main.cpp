#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shortfair/errors.hpp"
#include "shortfair/experiment.hpp"
#include "shortfair/feasibility.hpp"
#include "shortfair/oracle.hpp"

namespace {

using namespace shortfair;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += fmt(v);
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw config_error("cannot write '" + out_path + "'");
  out << text;
}

std::vector<Rational> parse_rate_list(const std::string& text) {
  std::vector<Rational> rates;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    size_t end = comma == std::string::npos ? text.size() : comma;
    rates.push_back(Rational::parse(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return rates;
}

int cmd_feasible(const std::string& demand_path, int64_t s_min, int64_t s_max,
                 const std::string& out_path) {
  DemandSpec spec = load_demand_file(demand_path);
  TemporalDemand demand = spec.demand();
  std::string csv = "s,feasible,witness_counts\n";
  for (int64_t s = s_min; s <= s_max; ++s) {
    FeasibilityResult feas = inequality_feasible(s, demand, spec.n_max);
    csv += std::to_string(s);
    csv += feas.feasible ? ",1," : ",0,";
    for (size_t i = 0; i < feas.witness_counts.size(); ++i) {
      if (i > 0) csv += '+';
      csv += std::to_string(feas.witness_counts[i]);
    }
    csv += '\n';
  }
  emit(csv, out_path);
  return 0;
}

int cmd_oracle(const std::string& demand_path, const std::string& rates_text, int64_t s_min,
               int64_t s_max, const std::string& out_path) {
  DemandSpec spec = load_demand_file(demand_path);
  TemporalDemand demand = spec.demand();
  VirtualUserCatalog catalog = VirtualUserCatalog::enumerate(spec.n, spec.n_max);
  std::vector<Rational> rates = parse_rate_list(rates_text);
  if (static_cast<int>(rates.size()) != catalog.m()) {
    throw config_error("need one rate per subset: expected " + std::to_string(catalog.m()) +
                       ", got " + std::to_string(rates.size()));
  }
  std::string csv = "s,feasible,utility\n";
  for (int64_t s = s_min; s <= s_max; ++s) {
    csv += std::to_string(s);
    if (inequality_feasible(s, demand, spec.n_max).feasible) {
      OracleResult best = oracle_optimal_utility(s, demand, catalog, rates);
      csv += ",1," + best.utility.str() + "\n";
    } else {
      csv += ",0,\n";
    }
  }
  emit(csv, out_path);
  return 0;
}

std::string report_to_text(const CalibrationReport& report) {
  std::string text;
  text += "converged=" + std::string(report.converged ? "true" : "false") + "\n";
  text += "iterations=" + std::to_string(report.iterations) + "\n";
  text += "thresholds=" + join_doubles(report.thresholds) + "\n";
  text += "realized_shares=" + join_doubles(report.realized_shares) + "\n";
  text += "u_estimate=" + fmt(report.u_estimate) + "\n";
  text += "u_half_width=" + fmt(report.u_half_width) + "\n";
  text += "epsilon=" + fmt(report.epsilon) + "\n";
  text += "epsilon_band=" + fmt(report.epsilon_band) + "\n";
  text += "epsilon_budget=" + fmt(report.epsilon_budget) + "\n";
  text += "atomic_tie=" + std::string(report.atomic_tie ? "true" : "false") + "\n";
  if (report.atomic_tie) {
    text += "tie_alpha=" + fmt(report.tie_alpha) + "\n";
    text += "tie_thresholds_a=" + join_doubles(report.tie_thresholds_a) + "\n";
    text += "tie_thresholds_b=" + join_doubles(report.tie_thresholds_b) + "\n";
  }
  return text;
}

int cmd_calibrate(const std::string& config_path, std::optional<uint64_t> seed,
                  const std::string& out_path) {
  ExperimentConfig config = load_config(config_path);
  if (seed) config.seed = *seed;
  validate_config(config);
  VirtualUserCatalog catalog = VirtualUserCatalog::enumerate(config.n, config.n_max);
  std::unique_ptr<Sampler> sampler = build_sampler(config, catalog, nullptr);
  CalibrationReport report =
      calibrate_thresholds(config.demand(), catalog, *sampler, config.calibration,
                           substream_seed(config.seed, {1, 0}));
  emit(report_to_text(report), out_path);
  return report.converged ? 0 : 1;
}

int cmd_run(const std::string& config_path, std::optional<uint64_t> seed, int workers,
            const std::string& out_path, const std::string& trace_dir) {
  ExperimentConfig config = load_config(config_path);
  if (seed) config.seed = *seed;
  if (!out_path.empty()) config.output = out_path;

  ExperimentResult result = run_experiment(config, workers);

  std::cerr << "calibration: " << (result.calibration.converged ? "converged" : "not converged")
            << " after " << result.calibration.iterations
            << " iterations, u_estimate=" << fmt(result.calibration.u_estimate)
            << ", epsilon=" << fmt(result.calibration.epsilon) << "\n";

  if (!trace_dir.empty()) {
    VirtualUserCatalog catalog = VirtualUserCatalog::enumerate(config.n, config.n_max);
    TemporalDemand demand = config.demand();
    std::unique_ptr<Sampler> sampler = build_sampler(config, catalog, nullptr);
    const ThresholdVector& lambda = result.calibration.thresholds;
    for (size_t strat_idx = 0; strat_idx < config.strategies.size(); ++strat_idx) {
      const std::string& name = config.strategies[strat_idx];
      for (size_t s_idx = 0; s_idx < config.window_lengths.size(); ++s_idx) {
        int64_t s = config.window_lengths[s_idx];
        Strategy strategy;
        if (name == "orr") {
          strategy = OrrStrategy{build_orr(s, demand, catalog)};
        } else if (name == "tbs") {
          strategy = TbsStrategy{lambda};
        } else {
          strategy = AtbsStrategy{lambda};
        }
        RngStream rng(substream_seed(config.seed, {4, strat_idx, s_idx, 0}));
        WindowResult window = run_window(strategy, s, demand, catalog, *sampler, rng);
        std::string path = trace_dir + "/trace_" + name + "_s" + std::to_string(s) + ".csv";
        std::ofstream out(path);
        if (!out) throw config_error("cannot write '" + path + "'");
        out << trace_to_csv(window.trace, catalog);
      }
    }
  }

  if (config.output.empty()) {
    std::cout << result.csv;
  } else {
    std::cerr << "wrote " << result.rows.size() << " rows to " << config.output << "\n";
  }
  return 0;
}

int cmd_dump_channel(const std::string& config_path, std::optional<uint64_t> seed,
                     const std::string& out_path) {
  ExperimentConfig config = load_config(config_path);
  if (seed) config.seed = *seed;
  validate_config(config);
  if (config.sampler.kind != SamplerSpec::Kind::cell) {
    throw config_error("dump-channel needs a config with a cell sampler");
  }
  VirtualUserCatalog catalog = VirtualUserCatalog::enumerate(config.n, config.n_max);
  std::vector<UserChannelState> users;
  build_sampler(config, catalog, &users);
  std::string csv = "user,distance_m,shadowing_db,mean_snr_db\n";
  for (size_t i = 0; i < users.size(); ++i) {
    csv += std::to_string(i + 1) + ',' + fmt(users[i].distance_m) + ',' +
           fmt(users[i].shadowing_db) + ',' + fmt(users[i].mean_snr_db) + '\n';
  }
  emit(csv, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Short-term fair scheduling toolkit"};
  app.require_subcommand(1);

  std::string demand_path, config_path, rates_text, out_path, trace_dir;
  int64_t s_min = 1, s_max = 1;
  std::optional<uint64_t> seed;
  int workers = 0;

  CLI::App* feasible = app.add_subcommand("feasible", "Scan window lengths for feasibility");
  feasible->add_option("--demand", demand_path, "demand JSON file")->required();
  feasible->add_option("--s-min", s_min, "first window length");
  feasible->add_option("--s-max", s_max, "last window length")->required();
  feasible->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* oracle = app.add_subcommand("oracle", "Exact optimal utility for fixed rates");
  oracle->add_option("--demand", demand_path, "demand JSON file")->required();
  oracle->add_option("--rates", rates_text, "comma-separated per-subset rates, catalog order")
      ->required();
  oracle->add_option("--s-min", s_min, "first window length");
  oracle->add_option("--s-max", s_max, "last window length")->required();
  oracle->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* calibrate = app.add_subcommand("calibrate", "Tune thresholds for the demand bands");
  calibrate->add_option("--config", config_path, "experiment config JSON")->required();
  calibrate->add_option("--seed", seed, "master seed override");
  calibrate->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* run = app.add_subcommand("run", "Run the configured experiment");
  run->add_option("--config", config_path, "experiment config JSON")->required();
  run->add_option("--seed", seed, "master seed override");
  run->add_option("--workers", workers, "worker threads (default: hardware)");
  run->add_option("--out", out_path, "output CSV override");
  run->add_option("--trace-dir", trace_dir, "dump one window trace per strategy and s");

  CLI::App* dump = app.add_subcommand("dump-channel", "Print the dropped users' link budgets");
  dump->add_option("--config", config_path, "experiment config JSON")->required();
  dump->add_option("--seed", seed, "master seed override");
  dump->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (feasible->parsed()) return cmd_feasible(demand_path, s_min, s_max, out_path);
    if (oracle->parsed()) return cmd_oracle(demand_path, rates_text, s_min, s_max, out_path);
    if (calibrate->parsed()) return cmd_calibrate(config_path, seed, out_path);
    if (run->parsed()) return cmd_run(config_path, seed, workers, out_path, trace_dir);
    if (dump->parsed()) return cmd_dump_channel(config_path, seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
