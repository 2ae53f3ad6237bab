#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "shortfair/demand.hpp"
#include "shortfair/sampler.hpp"
#include "shortfair/strategies.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

struct CalibrationConfig {
  double mu0 = 1.0;           // initial step size
  double kappa = 100.0;       // step decay: mu_k = mu0 / (1 + k/kappa)
  int batch_slots = 2000;     // slots per share measurement
  int max_iterations = 400;
  double tolerance = 0.01;    // allowed band overshoot of measured shares
  int64_t utility_horizon = 100000;  // slots for the final utility estimate

  void validate() const;
};

struct CalibrationReport {
  ThresholdVector thresholds;
  std::vector<double> realized_shares;
  double u_estimate = 0.0;    // long-term unconstrained utility at the result
  double u_half_width = 0.0;  // 95% half width of that estimate
  // Slack of the operating point: distance to the nearest band edge, and the
  // unused per-slot budget. epsilon = min of the two; <= 0 means the
  // tracking bound is vacuous at this operating point.
  double epsilon = 0.0;
  double epsilon_band = 0.0;
  double epsilon_budget = 0.0;
  int iterations = 0;
  bool converged = false;
  // Atomic performance laws can make the greedy rule flip between two
  // operating points with no threshold in between; the calibrator then
  // reports the band-feasible convex mixture of the two sides.
  bool atomic_tie = false;
  ThresholdVector tie_thresholds_a;
  ThresholdVector tie_thresholds_b;
  double tie_alpha = 0.0;  // weight on side a
};

// Tunes per-user thresholds until the unconstrained greedy rule's long-run
// shares sit inside the demand bands (within tolerance), by stepping each
// threshold along its band-violation gap with a decaying step size.
CalibrationReport calibrate_thresholds(const TemporalDemand& demand,
                                       const VirtualUserCatalog& catalog, const Sampler& sampler,
                                       const CalibrationConfig& config, uint64_t seed);

// Mean per-slot utility of the unconstrained greedy rule over a long horizon,
// with a 95% half width. The per-slot values are independent, so the normal
// interval applies directly.
std::pair<double, double> estimate_long_term_utility(const ThresholdVector& lambda,
                                                     const VirtualUserCatalog& catalog,
                                                     const Sampler& sampler, int64_t horizon,
                                                     uint64_t seed);

// Long-run per-user shares of the unconstrained greedy rule at fixed
// thresholds, measured over `slots` slots.
std::vector<double> measure_tbs_shares(const ThresholdVector& lambda,
                                       const VirtualUserCatalog& catalog, const Sampler& sampler,
                                       int64_t slots, uint64_t seed);

// Recomputes the epsilon fields of a report from its realized_shares.
void fill_operating_slack(CalibrationReport& report, const TemporalDemand& demand, int n_max);

}  // namespace shortfair
