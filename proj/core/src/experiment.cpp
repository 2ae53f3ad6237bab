#include "shortfair/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "shortfair/errors.hpp"
#include "shortfair/feasibility.hpp"
#include "shortfair/oracle.hpp"

namespace shortfair {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw config_error("unknown key '" + key + "' in " + where);
    }
  }
}

Rational parse_share(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw config_error(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<int64_t>());
  throw config_error(where + ": write fractional shares as strings like \"0.2\" or \"1/5\"");
}

std::vector<Rational> parse_share_list(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty()) throw config_error(where + " must be a nonempty array");
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_share(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> parse_double_list(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.empty()) throw config_error(where + " must be a nonempty array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw config_error(where + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SamplerSpec parse_sampler(const json& obj) {
  if (!obj.is_object()) throw config_error("sampler must be an object");
  if (!obj.contains("type")) throw config_error("sampler needs a 'type'");
  std::string type = obj.at("type").get<std::string>();

  SamplerSpec spec;
  if (type == "fixed") {
    reject_unknown_keys(obj, {"type", "rates"}, "sampler");
    if (!obj.contains("rates")) throw config_error("fixed sampler needs 'rates'");
    spec.kind = SamplerSpec::Kind::fixed;
    spec.values = parse_double_list(obj.at("rates"), "sampler.rates");
  } else if (type == "exponential") {
    reject_unknown_keys(obj, {"type", "means"}, "sampler");
    if (!obj.contains("means")) throw config_error("exponential sampler needs 'means'");
    spec.kind = SamplerSpec::Kind::exponential;
    spec.values = parse_double_list(obj.at("means"), "sampler.means");
  } else if (type == "lognormal") {
    reject_unknown_keys(obj, {"type", "means", "sigma"}, "sampler");
    if (!obj.contains("means") || !obj.contains("sigma")) {
      throw config_error("lognormal sampler needs 'means' and 'sigma'");
    }
    spec.kind = SamplerSpec::Kind::lognormal;
    spec.values = parse_double_list(obj.at("means"), "sampler.means");
    spec.sigma = obj.at("sigma").get<double>();
  } else if (type == "cell") {
    reject_unknown_keys(obj,
                        {"type", "inner_radius_m", "outer_radius_m", "tx_power_dbm",
                         "noise_power_dbm", "pathloss_ref_db", "pathloss_exponent",
                         "shadowing_sigma_db", "min_snr_db", "max_rate", "bandwidth_efficiency"},
                        "sampler");
    spec.kind = SamplerSpec::Kind::cell;
    CellConfig& cell = spec.cell;
    auto opt = [&](const char* key, double& field) {
      if (obj.contains(key)) field = obj.at(key).get<double>();
    };
    opt("inner_radius_m", cell.inner_radius_m);
    opt("outer_radius_m", cell.outer_radius_m);
    opt("tx_power_dbm", cell.tx_power_dbm);
    opt("noise_power_dbm", cell.noise_power_dbm);
    opt("pathloss_ref_db", cell.pathloss_ref_db);
    opt("pathloss_exponent", cell.pathloss_exponent);
    opt("shadowing_sigma_db", cell.shadowing_sigma_db);
    opt("min_snr_db", cell.min_snr_db);
    opt("max_rate", cell.max_rate);
    opt("bandwidth_efficiency", cell.bandwidth_efficiency);
  } else {
    throw config_error("unknown sampler type '" + type + "'");
  }
  return spec;
}

CalibrationConfig parse_calibration(const json& obj) {
  reject_unknown_keys(
      obj, {"mu0", "kappa", "batch_slots", "max_iterations", "tolerance", "utility_horizon"},
      "calibration");
  CalibrationConfig cal;
  if (obj.contains("mu0")) cal.mu0 = obj.at("mu0").get<double>();
  if (obj.contains("kappa")) cal.kappa = obj.at("kappa").get<double>();
  if (obj.contains("batch_slots")) cal.batch_slots = obj.at("batch_slots").get<int>();
  if (obj.contains("max_iterations")) cal.max_iterations = obj.at("max_iterations").get<int>();
  if (obj.contains("tolerance")) cal.tolerance = obj.at("tolerance").get<double>();
  if (obj.contains("utility_horizon")) {
    cal.utility_horizon = obj.at("utility_horizon").get<int64_t>();
  }
  return cal;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

Strategy make_strategy(const std::string& name, int64_t s, const TemporalDemand& demand,
                       const VirtualUserCatalog& catalog, const ThresholdVector& lambda) {
  if (name == "orr") return OrrStrategy{build_orr(s, demand, catalog)};
  if (name == "tbs") return TbsStrategy{lambda};
  if (name == "atbs") return AtbsStrategy{lambda};
  throw config_error("unknown strategy '" + name + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config root must be an object");
  reject_unknown_keys(root,
                      {"n", "n_max", "demand", "window_lengths", "trials", "strategies",
                       "sampler", "seed", "thresholds", "calibration", "output"},
                      "config");
  for (const char* key : {"n", "n_max", "demand", "window_lengths", "trials", "strategies",
                          "sampler", "seed"}) {
    if (!root.contains(key)) throw config_error(std::string("config needs '") + key + "'");
  }

  ExperimentConfig config;
  try {
    config.n = root.at("n").get<int>();
    config.n_max = root.at("n_max").get<int>();

    const json& demand = root.at("demand");
    if (!demand.is_object()) throw config_error("demand must be an object");
    reject_unknown_keys(demand, {"lower", "upper"}, "demand");
    if (!demand.contains("lower") || !demand.contains("upper")) {
      throw config_error("demand needs 'lower' and 'upper'");
    }
    config.lower = parse_share_list(demand.at("lower"), "demand.lower");
    config.upper = parse_share_list(demand.at("upper"), "demand.upper");

    const json& windows = root.at("window_lengths");
    if (!windows.is_array() || windows.empty()) {
      throw config_error("window_lengths must be a nonempty array");
    }
    for (const auto& v : windows) {
      if (!v.is_number_integer()) throw config_error("window_lengths entries must be integers");
      config.window_lengths.push_back(v.get<int64_t>());
    }

    config.trials = root.at("trials").get<int>();

    const json& strategies = root.at("strategies");
    if (!strategies.is_array() || strategies.empty()) {
      throw config_error("strategies must be a nonempty array");
    }
    for (const auto& v : strategies) config.strategies.push_back(v.get<std::string>());

    config.sampler = parse_sampler(root.at("sampler"));
    config.seed = root.at("seed").get<uint64_t>();

    if (root.contains("thresholds")) {
      config.thresholds = parse_double_list(root.at("thresholds"), "thresholds");
    }
    if (root.contains("calibration")) config.calibration = parse_calibration(root.at("calibration"));
    if (root.contains("output")) config.output = root.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw config_error(std::string("config has a wrongly typed value: ") + e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

DemandSpec load_demand_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open demand file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw config_error(std::string("demand file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("demand file root must be an object");
  reject_unknown_keys(root, {"n", "n_max", "demand"}, "demand file");
  for (const char* key : {"n", "n_max", "demand"}) {
    if (!root.contains(key)) throw config_error(std::string("demand file needs '") + key + "'");
  }
  DemandSpec spec;
  try {
    spec.n = root.at("n").get<int>();
    spec.n_max = root.at("n_max").get<int>();
    const json& demand = root.at("demand");
    if (!demand.is_object()) throw config_error("demand must be an object");
    reject_unknown_keys(demand, {"lower", "upper"}, "demand");
    if (!demand.contains("lower") || !demand.contains("upper")) {
      throw config_error("demand needs 'lower' and 'upper'");
    }
    spec.lower = parse_share_list(demand.at("lower"), "demand.lower");
    spec.upper = parse_share_list(demand.at("upper"), "demand.upper");
  } catch (const json::exception& e) {
    throw config_error(std::string("demand file has a wrongly typed value: ") + e.what());
  }
  if (static_cast<int>(spec.lower.size()) != spec.n ||
      static_cast<int>(spec.upper.size()) != spec.n) {
    throw config_error("demand lists must have exactly n entries");
  }
  return spec;
}

void validate_config(const ExperimentConfig& config) {
  VirtualUserCatalog catalog = VirtualUserCatalog::enumerate(config.n, config.n_max);
  if (static_cast<int>(config.lower.size()) != config.n ||
      static_cast<int>(config.upper.size()) != config.n) {
    throw config_error("demand lists must have exactly n entries");
  }
  TemporalDemand demand = config.demand();

  if (config.trials < 1) throw config_error("trials must be >= 1");
  if (config.window_lengths.empty()) throw config_error("window_lengths must be nonempty");

  std::set<std::string> seen;
  for (const std::string& name : config.strategies) {
    if (name != "orr" && name != "tbs" && name != "atbs") {
      throw config_error("unknown strategy '" + name + "'");
    }
    if (!seen.insert(name).second) throw config_error("strategy '" + name + "' listed twice");
  }

  for (int64_t s : config.window_lengths) {
    if (s < 1) throw config_error("window lengths must be >= 1");
    FeasibilityResult feas = inequality_feasible(s, demand, config.n_max);
    if (!feas.feasible) {
      throw config_error("window length " + std::to_string(s) + " is infeasible: " + feas.reason);
    }
  }

  switch (config.sampler.kind) {
    case SamplerSpec::Kind::fixed:
    case SamplerSpec::Kind::exponential:
    case SamplerSpec::Kind::lognormal:
      if (static_cast<int>(config.sampler.values.size()) != catalog.m()) {
        throw config_error("sampler needs one entry per subset: expected " +
                           std::to_string(catalog.m()) + ", got " +
                           std::to_string(config.sampler.values.size()));
      }
      break;
    case SamplerSpec::Kind::cell:
      if (config.n_max > 2) throw config_error("the cell model serves at most two users per slot");
      config.sampler.cell.validate();
      break;
  }

  if (config.thresholds && static_cast<int>(config.thresholds->size()) != config.n) {
    throw config_error("thresholds must have exactly n entries");
  }
  config.calibration.validate();
}

std::unique_ptr<Sampler> build_sampler(const ExperimentConfig& config,
                                       const VirtualUserCatalog& catalog,
                                       std::vector<UserChannelState>* users_out) {
  switch (config.sampler.kind) {
    case SamplerSpec::Kind::fixed:
      return std::make_unique<FixedSampler>(config.sampler.values);
    case SamplerSpec::Kind::exponential:
      return std::make_unique<ExponentialSampler>(config.sampler.values);
    case SamplerSpec::Kind::lognormal:
      return std::make_unique<LognormalSampler>(config.sampler.values, config.sampler.sigma);
    case SamplerSpec::Kind::cell: {
      CellConfig cell = config.sampler.cell;
      cell.n_users = config.n;
      std::vector<UserChannelState> users =
          drop_users(cell, substream_seed(config.seed, {2, 0}));
      if (users_out) *users_out = users;
      return std::make_unique<CellSampler>(std::move(users), catalog, cell);
    }
  }
  throw std::logic_error("unhandled sampler kind");
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "s,strategy,mean_utility,ci_half,violations,stop_frac,wald_lb,thm4_lb\n";
  for (const ExperimentRow& row : rows) {
    out += std::to_string(row.s);
    out += ',';
    out += row.strategy;
    out += ',';
    out += fmt_double(row.mean_utility);
    out += ',';
    out += fmt_double(row.ci_half);
    out += ',';
    out += std::to_string(row.violations);
    out += ',';
    out += fmt_double(row.stop_frac);
    out += ',';
    out += fmt_double(row.wald_lb);
    out += ',';
    out += fmt_double(row.thm4_lb);
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const ScheduleTrace& trace, const VirtualUserCatalog& catalog) {
  std::string out = "slot,subset,rate";
  for (int i = 0; i < catalog.n(); ++i) out += ",count_" + std::to_string(i + 1);
  out += '\n';
  std::vector<int64_t> counts(catalog.n(), 0);
  for (int64_t t = 1; t <= trace.t(); ++t) {
    int j = trace.choices[t - 1];
    uint32_t mask = catalog.mask(j);
    while (mask != 0) {
      ++counts[__builtin_ctz(mask)];
      mask &= mask - 1;
    }
    out += std::to_string(t);
    out += ',';
    out += catalog.label(j);
    out += ',';
    out += fmt_double(trace.realized[t - 1]);
    for (int64_t c : counts) out += ',' + std::to_string(c);
    out += '\n';
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  validate_config(config);
  VirtualUserCatalog catalog = VirtualUserCatalog::enumerate(config.n, config.n_max);
  TemporalDemand demand = config.demand();

  ExperimentResult result;
  std::unique_ptr<Sampler> sampler = build_sampler(config, catalog, &result.cell_users);

  if (config.thresholds) {
    CalibrationReport report;
    report.thresholds = *config.thresholds;
    report.iterations = 0;
    report.realized_shares =
        measure_tbs_shares(report.thresholds, catalog, *sampler,
                           5 * int64_t(config.calibration.batch_slots),
                           substream_seed(config.seed, {1, 1}));
    auto [mean, half] =
        estimate_long_term_utility(report.thresholds, catalog, *sampler,
                                   config.calibration.utility_horizon,
                                   substream_seed(config.seed, {1, 2}));
    report.u_estimate = mean;
    report.u_half_width = half;
    fill_operating_slack(report, demand, config.n_max);
    report.converged = true;
    for (int i = 0; i < config.n; ++i) {
      double w = report.realized_shares[i];
      if (w < demand.lower(i).to_double() - config.calibration.tolerance ||
          w > demand.upper(i).to_double() + config.calibration.tolerance) {
        report.converged = false;
      }
    }
    result.calibration = report;
  } else {
    result.calibration = calibrate_thresholds(demand, catalog, *sampler, config.calibration,
                                              substream_seed(config.seed, {1, 0}));
  }

  const ThresholdVector& lambda = result.calibration.thresholds;
  const double u_ref = result.calibration.u_estimate;
  const double eps = result.calibration.epsilon;

  int pool = workers;
  if (pool <= 0) pool = static_cast<int>(std::thread::hardware_concurrency());
  if (pool < 1) pool = 1;

  for (size_t strat_idx = 0; strat_idx < config.strategies.size(); ++strat_idx) {
    const std::string& name = config.strategies[strat_idx];
    for (size_t s_idx = 0; s_idx < config.window_lengths.size(); ++s_idx) {
      const int64_t s = config.window_lengths[s_idx];
      const Strategy strategy = make_strategy(name, s, demand, catalog, lambda);
      const int trials = config.trials;

      std::vector<double> utilities(trials);
      std::vector<int64_t> stops(trials);
      std::vector<uint8_t> violated(trials);
      const int active = std::min(pool, trials);
      std::vector<std::exception_ptr> failures(active);

      auto work = [&](int worker) {
        try {
          for (int trial = worker; trial < trials; trial += active) {
            RngStream rng(substream_seed(
                config.seed, {4, strat_idx, s_idx, static_cast<uint64_t>(trial)}));
            WindowResult wr = run_window(strategy, s, demand, catalog, *sampler, rng);
            utilities[trial] = average_utility(wr.trace, s);
            stops[trial] = wr.stop_time;
            violated[trial] = wr.fairness.ok ? 0 : 1;
          }
        } catch (...) {
          failures[worker] = std::current_exception();
        }
      };

      std::vector<std::thread> threads;
      threads.reserve(active - 1);
      for (int w = 1; w < active; ++w) threads.emplace_back(work, w);
      work(0);
      for (std::thread& th : threads) th.join();
      for (const std::exception_ptr& failure : failures) {
        if (failure) std::rethrow_exception(failure);
      }

      ExperimentRow row;
      row.s = s;
      row.strategy = name;
      double sum = 0.0;
      for (double u : utilities) sum += u;
      row.mean_utility = sum / trials;
      if (trials > 1) {
        double ssq = 0.0;
        for (double u : utilities) ssq += (u - row.mean_utility) * (u - row.mean_utility);
        row.ci_half = 1.96 * std::sqrt(ssq / (trials - 1) / trials);
      }
      for (uint8_t v : violated) row.violations += v;
      double stop_sum = 0.0;
      for (int64_t a : stops) stop_sum += static_cast<double>(a);
      row.stop_frac = stop_sum / trials / static_cast<double>(s);
      if (name == "atbs") {
        row.wald_lb = stop_time_lower_bound(stops, s, u_ref);
        row.thm4_lb = eps > 0.0 ? tracking_probability_bound(catalog.m(), s, eps) : 0.0;
      }
      result.rows.push_back(std::move(row));
    }
  }

  ExperimentRow reference;
  reference.s = 0;
  reference.strategy = "tbs-longterm";
  reference.mean_utility = u_ref;
  reference.ci_half = result.calibration.u_half_width;
  reference.stop_frac = 1.0;
  result.rows.push_back(std::move(reference));

  result.csv = rows_to_csv(result.rows);
  if (!config.output.empty()) {
    std::ofstream out(config.output);
    if (!out) throw config_error("cannot write output file '" + config.output + "'");
    out << result.csv;
  }
  return result;
}

}  // namespace shortfair
