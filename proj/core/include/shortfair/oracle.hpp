#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shortfair/demand.hpp"
#include "shortfair/rational.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

struct OracleResult {
  Rational utility;           // best end-of-window average, exact
  std::vector<int> schedule;  // one optimal choice sequence, lowest-index ties
};

// Exact optimum of the end-of-window average utility over all schedules that
// respect the demand bands, for deterministic per-subset rates. Dynamic
// program over (slot, served-count) states with reachability pruning; exact
// integer weights throughout. Built for small instances only: n <= 4, s <= 64.
OracleResult oracle_optimal_utility(int64_t s, const TemporalDemand& demand,
                                    const VirtualUserCatalog& catalog,
                                    std::span<const Rational> rates);

struct SuperadditivityViolation {
  int64_t s1 = 0;
  int64_t s2 = 0;
  Rational lhs;  // s1*U(s1) + s2*U(s2)
  Rational rhs;  // (s1+s2)*U(s1+s2)
};

// Checks s1*U(s1) + s2*U(s2) <= (s1+s2)*U(s1+s2) for every pair of feasible
// window lengths up to s_max whose sum is also feasible. Empty result means
// the inequality held everywhere.
std::vector<SuperadditivityViolation> check_superadditivity(
    int64_t s_max, const TemporalDemand& demand, const VirtualUserCatalog& catalog,
    std::span<const Rational> rates);

struct MonotonicityStep {
  int64_t s = 0;
  int sign = 0;  // sign of U(s+1) - U(s)
};

// Signs of consecutive optimal-utility differences over [s_lo, s_hi]; pairs
// with an infeasible endpoint are skipped.
std::vector<MonotonicityStep> check_nonmonotonicity(int64_t s_lo, int64_t s_hi,
                                                    const TemporalDemand& demand,
                                                    const VirtualUserCatalog& catalog,
                                                    std::span<const Rational> rates);

// Probability floor for the constrained greedy step tracking the unconstrained
// one over a whole window: 1 - m / (4 s epsilon^2), clamped at 0. epsilon is
// the operating point's distance to the nearest band edge and budget edge;
// it must be positive, otherwise the bound is vacuous and a domain_error is
// thrown so callers can report it as such.
double tracking_probability_bound(int m, int64_t s, double epsilon);

// Lower bound on constrained utility from observed stop times: the mean stop
// fraction times the unconstrained long-term utility.
double stop_time_lower_bound(std::span<const int64_t> stop_times, int64_t s,
                             double u_unconstrained);

}  // namespace shortfair
