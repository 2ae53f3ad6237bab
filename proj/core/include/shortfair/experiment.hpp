#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shortfair/calibration.hpp"
#include "shortfair/channel.hpp"
#include "shortfair/demand.hpp"
#include "shortfair/sampler.hpp"
#include "shortfair/strategies.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

struct SamplerSpec {
  enum class Kind { fixed, exponential, lognormal, cell };
  Kind kind = Kind::fixed;
  std::vector<double> values;  // per-subset rates (fixed) or means (exp/lognormal)
  double sigma = 0.0;          // lognormal only
  CellConfig cell;             // cell only
};

struct ExperimentConfig {
  int n = 0;
  int n_max = 0;
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  std::vector<int64_t> window_lengths;
  int trials = 0;
  std::vector<std::string> strategies;  // "orr" | "tbs" | "atbs"
  SamplerSpec sampler;
  uint64_t seed = 0;
  std::optional<ThresholdVector> thresholds;  // skip calibration when given
  CalibrationConfig calibration;
  std::string output;  // CSV path; empty writes nowhere

  TemporalDemand demand() const { return TemporalDemand(lower, upper); }
};

// Strict parse: unknown keys anywhere are errors, fractional shares must be
// given as strings ("0.2" or "1/5") so nothing is rounded on the way in.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Demand-only input for the feasibility and oracle commands: a JSON object
// with exactly n, n_max, and demand{lower, upper}.
struct DemandSpec {
  int n = 0;
  int n_max = 0;
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  TemporalDemand demand() const { return TemporalDemand(lower, upper); }
};
DemandSpec load_demand_file(const std::string& path);

// Full validation, including a feasibility check of every window length;
// throws config_error naming the violated constraint.
void validate_config(const ExperimentConfig& config);

// Sampler construction shared by the runner and the CLI. The cell variant
// drops users with a substream of the master seed.
std::unique_ptr<Sampler> build_sampler(const ExperimentConfig& config,
                                       const VirtualUserCatalog& catalog,
                                       std::vector<UserChannelState>* users_out);

struct ExperimentRow {
  int64_t s = 0;
  std::string strategy;
  double mean_utility = 0.0;
  double ci_half = 0.0;  // 95% normal half width over trials
  int64_t violations = 0;
  double stop_frac = 0.0;
  double wald_lb = 0.0;   // stop fraction times the long-term reference utility
  double thm4_lb = 0.0;   // tracking-probability floor, 0 when vacuous
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  CalibrationReport calibration;
  std::vector<UserChannelState> cell_users;  // empty unless the cell sampler ran
  std::string csv;
};

std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

// Runs every (strategy, window length) block for `trials` windows each, with
// per-trial seeded streams. Results are stored by trial index and reduced in
// that order, so the output is identical for any worker count. workers <= 0
// picks the hardware concurrency.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 1);

// One window re-run as CSV: slot, subset label, realized rate, cumulative
// per-user counts. Matches what the trial with the same tags produced.
std::string trace_to_csv(const ScheduleTrace& trace, const VirtualUserCatalog& catalog);

}  // namespace shortfair
