#include "shortfair/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "shortfair/errors.hpp"
#include "shortfair/feasibility.hpp"

namespace shortfair {

namespace {

constexpr int64_t kUnreachable = std::numeric_limits<int64_t>::min();
constexpr size_t kStateCap = 1u << 25;

// DP over (slot, per-user counts). Counts fit 7 bits each at s <= 64.
struct Dp {
  int n = 0;
  int m = 0;
  int64_t s = 0;
  int n_max = 0;
  std::vector<int64_t> min_counts;
  std::vector<int64_t> max_counts;
  std::vector<int64_t> weights;           // integer rate numerators over a common denominator
  std::vector<uint32_t> masks;
  std::unordered_map<uint64_t, int64_t> memo;

  uint64_t key(int64_t t, const std::vector<int64_t>& counts) const {
    uint64_t k = static_cast<uint64_t>(t);
    for (int i = 0; i < n; ++i) k |= static_cast<uint64_t>(counts[i]) << (7 * (i + 1));
    return k;
  }

  // Can the remaining slots still land every count inside its band?
  bool viable(int64_t t, const std::vector<int64_t>& counts) const {
    int64_t remaining = s - t;
    int64_t deficit_sum = 0;
    for (int i = 0; i < n; ++i) {
      if (counts[i] > max_counts[i]) return false;
      int64_t deficit = min_counts[i] - counts[i];
      if (deficit > remaining) return false;
      if (deficit > 0) deficit_sum += deficit;
    }
    return deficit_sum <= remaining * n_max;
  }

  // Best achievable weight sum over slots t+1..s, or kUnreachable.
  int64_t best_from(int64_t t, std::vector<int64_t>& counts) {
    if (!viable(t, counts)) return kUnreachable;
    if (t == s) return 0;
    uint64_t k = key(t, counts);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    if (memo.size() > kStateCap) throw resource_error("count-state space too large");

    int64_t best = kUnreachable;
    for (int j = 0; j < m; ++j) {
      uint32_t mask = masks[j];
      for (uint32_t b = mask; b != 0; b &= b - 1) ++counts[__builtin_ctz(b)];
      int64_t tail = best_from(t + 1, counts);
      for (uint32_t b = mask; b != 0; b &= b - 1) --counts[__builtin_ctz(b)];
      if (tail != kUnreachable) best = std::max(best, weights[j] + tail);
    }
    memo.emplace(k, best);
    return best;
  }
};

}  // namespace

OracleResult oracle_optimal_utility(int64_t s, const TemporalDemand& demand,
                                    const VirtualUserCatalog& catalog,
                                    std::span<const Rational> rates) {
  if (demand.n() != catalog.n()) throw std::invalid_argument("demand does not match the catalog");
  if (static_cast<int>(rates.size()) != catalog.m()) {
    throw std::invalid_argument("rate count does not match the catalog");
  }
  if (catalog.n() > 4 || s > 64) {
    throw resource_error("exact search is limited to n <= 4 and windows up to 64");
  }
  FeasibilityResult feas = inequality_feasible(s, demand, catalog.n_max());
  if (!feas.feasible) {
    throw infeasible_error("window length " + std::to_string(s) + " infeasible: " + feas.reason);
  }

  int64_t denom = lcm_denominators(rates);
  Dp dp;
  dp.n = catalog.n();
  dp.m = catalog.m();
  dp.s = s;
  dp.n_max = catalog.n_max();
  dp.min_counts = min_slot_counts(s, demand);
  dp.max_counts = max_slot_counts(s, demand);
  dp.weights.reserve(catalog.m());
  for (const Rational& r : rates) {
    int64_t w = 0;
    if (__builtin_mul_overflow(r.num(), denom / r.den(), &w) ||
        std::abs(w) > std::numeric_limits<int64_t>::max() / (s + 1)) {
      throw std::overflow_error("rate magnitudes too large for exact search");
    }
    dp.weights.push_back(w);
  }
  dp.masks.reserve(catalog.m());
  for (int j = 0; j < catalog.m(); ++j) dp.masks.push_back(catalog.mask(j));

  std::vector<int64_t> counts(dp.n, 0);
  int64_t best = dp.best_from(0, counts);
  if (best == kUnreachable) throw std::logic_error("feasible window with no schedule");

  OracleResult result;
  result.utility = Rational(best) / (Rational(denom) * Rational(s));
  result.schedule.reserve(s);
  int64_t rest = best;
  for (int64_t t = 0; t < s; ++t) {
    for (int j = 0; j < dp.m; ++j) {
      uint32_t mask = dp.masks[j];
      for (uint32_t b = mask; b != 0; b &= b - 1) ++counts[__builtin_ctz(b)];
      int64_t tail = dp.best_from(t + 1, counts);
      if (tail != kUnreachable && dp.weights[j] + tail == rest) {
        result.schedule.push_back(j);
        rest = tail;
        break;
      }
      for (uint32_t b = mask; b != 0; b &= b - 1) --counts[__builtin_ctz(b)];
    }
  }
  if (static_cast<int64_t>(result.schedule.size()) != s) {
    throw std::logic_error("schedule reconstruction failed");
  }
  return result;
}

std::vector<SuperadditivityViolation> check_superadditivity(
    int64_t s_max, const TemporalDemand& demand, const VirtualUserCatalog& catalog,
    std::span<const Rational> rates) {
  std::map<int64_t, Rational> utility;
  auto feasible = [&](int64_t s) {
    return inequality_feasible(s, demand, catalog.n_max()).feasible;
  };
  auto value = [&](int64_t s) -> const Rational& {
    auto it = utility.find(s);
    if (it == utility.end()) {
      it = utility.emplace(s, oracle_optimal_utility(s, demand, catalog, rates).utility).first;
    }
    return it->second;
  };

  std::vector<int64_t> window_lengths;
  for (int64_t s = 1; s <= s_max; ++s) {
    if (feasible(s)) window_lengths.push_back(s);
  }

  std::vector<SuperadditivityViolation> violations;
  for (int64_t s1 : window_lengths) {
    for (int64_t s2 : window_lengths) {
      if (s2 < s1) continue;
      int64_t sum = s1 + s2;
      if (!feasible(sum)) continue;
      Rational lhs = Rational(s1) * value(s1) + Rational(s2) * value(s2);
      Rational rhs = Rational(sum) * value(sum);
      if (lhs > rhs) violations.push_back({s1, s2, lhs, rhs});
    }
  }
  return violations;
}

std::vector<MonotonicityStep> check_nonmonotonicity(int64_t s_lo, int64_t s_hi,
                                                    const TemporalDemand& demand,
                                                    const VirtualUserCatalog& catalog,
                                                    std::span<const Rational> rates) {
  if (s_lo < 1 || s_hi < s_lo) throw std::invalid_argument("bad window-length range");
  std::vector<MonotonicityStep> steps;
  bool have_prev = false;
  Rational prev;
  for (int64_t s = s_lo; s <= s_hi; ++s) {
    if (!inequality_feasible(s, demand, catalog.n_max()).feasible) {
      have_prev = false;
      continue;
    }
    Rational u = oracle_optimal_utility(s, demand, catalog, rates).utility;
    if (have_prev) {
      int sign = u == prev ? 0 : (u > prev ? 1 : -1);
      steps.push_back({s - 1, sign});
    }
    prev = u;
    have_prev = true;
  }
  return steps;
}

double tracking_probability_bound(int m, int64_t s, double epsilon) {
  if (m < 1 || s < 1) throw std::invalid_argument("bound needs m >= 1 and s >= 1");
  if (!(epsilon > 0.0)) {
    throw std::domain_error("tracking bound is vacuous without band and budget slack");
  }
  double bound = 1.0 - static_cast<double>(m) / (4.0 * static_cast<double>(s) * epsilon * epsilon);
  return std::max(bound, 0.0);
}

double stop_time_lower_bound(std::span<const int64_t> stop_times, int64_t s,
                             double u_unconstrained) {
  if (stop_times.empty()) throw std::invalid_argument("no stop times observed");
  if (s < 1) throw std::invalid_argument("window length must be >= 1");
  double sum = 0.0;
  for (int64_t a : stop_times) sum += static_cast<double>(a);
  double mean = sum / static_cast<double>(stop_times.size());
  return (mean / static_cast<double>(s)) * u_unconstrained;
}

}  // namespace shortfair
