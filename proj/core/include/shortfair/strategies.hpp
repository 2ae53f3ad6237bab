#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "shortfair/demand.hpp"
#include "shortfair/sampler.hpp"
#include "shortfair/trace.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

// One real threshold per user; added to the slot performance of every subset
// containing the user.
using ThresholdVector = std::vector<double>;

// Mid-window scheduling state: served counts plus the shrinking set of
// subsets that can still be chosen without stranding the window.
struct StrategyState {
  int64_t window = 0;
  int64_t t = 1;  // slot about to be scheduled, 1-based
  std::vector<int64_t> counts;
  std::vector<int> live;  // admissible catalog indices, ascending
  std::vector<int64_t> min_counts;
  std::vector<int64_t> max_counts;
  int n_max = 0;
};

StrategyState make_strategy_state(int64_t s, const TemporalDemand& demand,
                                  const VirtualUserCatalog& catalog);

double scheduling_measure(const VirtualUserCatalog& catalog, int j, double performance,
                          const ThresholdVector& lambda);

// Can subset j be served at slot state.t and still leave every user's count
// band reachable by the end of the window? All three checks are exact integer
// comparisons: the per-user deficit must fit the remaining slots, no cap may
// be overrun, and the summed deficits must fit the remaining slot budget.
bool admissible(const VirtualUserCatalog& catalog, const StrategyState& state, int j);

// Unconstrained greedy step: argmax of the measure over the whole catalog,
// lowest index on ties.
int tbs_step(const VirtualUserCatalog& catalog, const ThresholdVector& lambda,
             std::span<const double> performance);

// Constrained greedy step: re-filters the live set (which only ever shrinks),
// then picks the measure argmax inside it and commits the slot.
int atbs_step(const VirtualUserCatalog& catalog, StrategyState& state,
              const ThresholdVector& lambda, std::span<const double> performance);

struct OrrStrategy {
  std::vector<int> sequence;  // one catalog index per slot
};
struct TbsStrategy {
  ThresholdVector lambda;
};
struct AtbsStrategy {
  ThresholdVector lambda;
};
using Strategy = std::variant<OrrStrategy, TbsStrategy, AtbsStrategy>;

struct WindowResult {
  ScheduleTrace trace;
  // First slot at which the constrained live set differs from the slot-1 one;
  // equals the window length when the constraints never bite (and always, for
  // strategies without a live set).
  int64_t stop_time = 0;
  FairnessReport fairness;
};

WindowResult run_window(const Strategy& strategy, int64_t s, const TemporalDemand& demand,
                        const VirtualUserCatalog& catalog, const Sampler& sampler,
                        RngStream& rng);

}  // namespace shortfair
