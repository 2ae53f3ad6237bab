#include "shortfair/strategies.hpp"

#include <cmath>
#include <stdexcept>

#include "shortfair/errors.hpp"
#include "shortfair/feasibility.hpp"

namespace shortfair {

namespace {

void check_lambda(const ThresholdVector& lambda, int n) {
  if (static_cast<int>(lambda.size()) != n) {
    throw std::invalid_argument("threshold vector length does not match the user count");
  }
  for (double v : lambda) {
    if (!std::isfinite(v)) throw std::invalid_argument("thresholds must be finite");
  }
}

}  // namespace

StrategyState make_strategy_state(int64_t s, const TemporalDemand& demand,
                                  const VirtualUserCatalog& catalog) {
  if (demand.n() != catalog.n()) throw std::invalid_argument("demand does not match the catalog");
  FeasibilityResult feas = inequality_feasible(s, demand, catalog.n_max());
  if (!feas.feasible) {
    throw infeasible_error("window length " + std::to_string(s) + " infeasible: " + feas.reason);
  }
  StrategyState state;
  state.window = s;
  state.counts.assign(catalog.n(), 0);
  state.min_counts = min_slot_counts(s, demand);
  state.max_counts = max_slot_counts(s, demand);
  state.n_max = catalog.n_max();
  state.live.resize(catalog.m());
  for (int j = 0; j < catalog.m(); ++j) state.live[j] = j;
  return state;
}

double scheduling_measure(const VirtualUserCatalog& catalog, int j, double performance,
                          const ThresholdVector& lambda) {
  double v = performance;
  uint32_t mask = catalog.mask(j);
  while (mask != 0) {
    v += lambda[__builtin_ctz(mask)];
    mask &= mask - 1;
  }
  return v;
}

bool admissible(const VirtualUserCatalog& catalog, const StrategyState& state, int j) {
  int64_t remaining = state.window - state.t;
  int64_t deficit_sum = 0;
  for (int i = 0; i < catalog.n(); ++i) {
    int64_t c = state.counts[i] + (catalog.contains(j, i) ? 1 : 0);
    if (c > state.max_counts[i]) return false;
    int64_t deficit = state.min_counts[i] - c;
    if (deficit > remaining) return false;
    if (deficit > 0) deficit_sum += deficit;
  }
  return deficit_sum <= remaining * state.n_max;
}

int tbs_step(const VirtualUserCatalog& catalog, const ThresholdVector& lambda,
             std::span<const double> performance) {
  check_lambda(lambda, catalog.n());
  int best = 0;
  double best_measure = scheduling_measure(catalog, 0, performance[0], lambda);
  for (int j = 1; j < catalog.m(); ++j) {
    double v = scheduling_measure(catalog, j, performance[j], lambda);
    if (v > best_measure) {
      best = j;
      best_measure = v;
    }
  }
  return best;
}

int atbs_step(const VirtualUserCatalog& catalog, StrategyState& state,
              const ThresholdVector& lambda, std::span<const double> performance) {
  check_lambda(lambda, catalog.n());
  if (state.t > state.window) throw std::out_of_range("window already fully scheduled");

  size_t kept = 0;
  for (size_t k = 0; k < state.live.size(); ++k) {
    if (admissible(catalog, state, state.live[k])) state.live[kept++] = state.live[k];
  }
  // the filter can only discard, never resurrect
  if (kept > state.live.size()) throw std::logic_error("live set grew");
  state.live.resize(kept);
  if (state.live.empty()) {
    throw std::logic_error("live set emptied at slot " + std::to_string(state.t) +
                           "; the window was feasible, so this cannot happen");
  }

  int best = state.live[0];
  double best_measure = scheduling_measure(catalog, best, performance[best], lambda);
  for (size_t k = 1; k < state.live.size(); ++k) {
    int j = state.live[k];
    double v = scheduling_measure(catalog, j, performance[j], lambda);
    if (v > best_measure) {
      best = j;
      best_measure = v;
    }
  }

  uint32_t mask = catalog.mask(best);
  while (mask != 0) {
    ++state.counts[__builtin_ctz(mask)];
    mask &= mask - 1;
  }
  ++state.t;
  return best;
}

WindowResult run_window(const Strategy& strategy, int64_t s, const TemporalDemand& demand,
                        const VirtualUserCatalog& catalog, const Sampler& sampler,
                        RngStream& rng) {
  if (sampler.m() != catalog.m()) throw std::invalid_argument("sampler does not match the catalog");

  WindowResult result{ScheduleTrace(s), s, {}};
  std::vector<double> perf(catalog.m());

  if (const auto* orr = std::get_if<OrrStrategy>(&strategy)) {
    if (static_cast<int64_t>(orr->sequence.size()) != s) {
      throw std::invalid_argument("round-robin sequence length does not match the window");
    }
    for (int64_t t = 1; t <= s; ++t) {
      sampler.sample(rng, perf);
      int j = orr->sequence[t - 1];
      result.trace.record(j, perf[j]);
    }
  } else if (const auto* tbs = std::get_if<TbsStrategy>(&strategy)) {
    for (int64_t t = 1; t <= s; ++t) {
      sampler.sample(rng, perf);
      int j = tbs_step(catalog, tbs->lambda, perf);
      result.trace.record(j, perf[j]);
    }
  } else {
    const auto& atbs = std::get<AtbsStrategy>(strategy);
    StrategyState state = make_strategy_state(s, demand, catalog);
    std::vector<int> initial_live;
    for (int64_t t = 1; t <= s; ++t) {
      sampler.sample(rng, perf);
      int j = atbs_step(catalog, state, atbs.lambda, perf);
      result.trace.record(j, perf[j]);
      if (t == 1) {
        initial_live = state.live;
      } else if (result.stop_time == s && state.live != initial_live) {
        result.stop_time = t;
      }
    }
  }

  result.fairness = check_fairness(result.trace, catalog, demand);
  return result;
}

}  // namespace shortfair
