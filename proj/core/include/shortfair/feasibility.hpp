#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shortfair/demand.hpp"
#include "shortfair/rational.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

// Smallest window length at which every weight in `weights` becomes an
// integer slot count; the achievable window lengths for exact shares are
// precisely its positive multiples.
int64_t share_resolution(std::span<const Rational> weights);

// Exact-share feasibility: can every user hold share weights[i] over a window
// of length s with at most n_max users served per slot? Throws
// infeasible_error when the weights sum past n_max (no window length works).
bool equality_feasible(int64_t s, std::span<const Rational> weights, int n_max);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<int64_t> witness_counts;  // minimal per-user slot counts
  std::vector<Rational> witness_shares;
  std::string reason;  // set when infeasible, names the violated constraint
};

// Band feasibility at window length s. The witness uses the minimal counts
// ceil(s * lower_i); when those fit under the caps and the per-slot budget,
// nothing else needs to be searched.
FeasibilityResult inequality_feasible(int64_t s, const TemporalDemand& demand, int n_max);

// Window length T such that every s > T is feasible for the band demand.
// Requires slack in both the per-slot budget and every band; degenerate
// demands get a domain_error pointing at equality_feasible instead.
int64_t contiguity_threshold(const TemporalDemand& demand, int n_max);

// Time shares of the catalog's virtual users induced by a schedule.
struct VirtualShareVector {
  std::vector<Rational> shares;  // indexed like the catalog
  int64_t window = 0;
};

// Maps per-user shares (integral at s) to virtual-user shares by laying each
// user's slots consecutively on an n_max-row tape of width s and reading
// columns; the wrap-around guarantees no user lands twice in one column.
VirtualShareVector theta_map(int64_t s, std::span<const Rational> weights,
                             const VirtualUserCatalog& catalog);

// Deterministic block schedule: each catalog subset served for its
// theta-share of the window, blocks in catalog order. Length-s sequence of
// catalog indices; throws infeasible_error when s is infeasible.
std::vector<int> build_orr(int64_t s, const TemporalDemand& demand,
                           const VirtualUserCatalog& catalog);

}  // namespace shortfair
