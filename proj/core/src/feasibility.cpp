#include "shortfair/feasibility.hpp"

#include <algorithm>
#include <stdexcept>

#include "shortfair/errors.hpp"

namespace shortfair {

namespace {

void check_weights(std::span<const Rational> weights) {
  if (weights.empty()) throw std::invalid_argument("empty weight list");
  const Rational zero(0), one(1);
  for (const Rational& w : weights) {
    if (w < zero || w > one) throw config_error("shares must lie in [0, 1]");
  }
}

Rational weight_sum(std::span<const Rational> weights) {
  Rational s(0);
  for (const Rational& w : weights) s += w;
  return s;
}

}  // namespace

int64_t share_resolution(std::span<const Rational> weights) {
  check_weights(weights);
  return lcm_denominators(weights);
}

bool equality_feasible(int64_t s, std::span<const Rational> weights, int n_max) {
  if (s < 1) throw std::invalid_argument("window length must be >= 1");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  check_weights(weights);
  if (weight_sum(weights) > Rational(n_max)) {
    throw infeasible_error("share sum exceeds the per-slot budget; no window length works");
  }
  return s % share_resolution(weights) == 0;
}

FeasibilityResult inequality_feasible(int64_t s, const TemporalDemand& demand, int n_max) {
  if (s < 1) throw std::invalid_argument("window length must be >= 1");
  if (n_max < 1 || n_max > demand.n()) throw std::invalid_argument("n_max must be in [1, n]");

  FeasibilityResult result;
  std::vector<int64_t> lo = min_slot_counts(s, demand);
  std::vector<int64_t> hi = max_slot_counts(s, demand);
  int64_t total = 0;
  for (int i = 0; i < demand.n(); ++i) {
    if (lo[i] > hi[i]) {
      result.reason = "user " + std::to_string(i + 1) + ": minimum count " +
                      std::to_string(lo[i]) + " exceeds capacity " + std::to_string(hi[i]);
      return result;
    }
    total += lo[i];
  }
  if (total > s * n_max) {
    result.reason = "minimum counts sum to " + std::to_string(total) + " > s*n_max = " +
                    std::to_string(s * n_max);
    return result;
  }
  result.feasible = true;
  result.witness_counts = std::move(lo);
  result.witness_shares.reserve(demand.n());
  for (int64_t c : result.witness_counts) result.witness_shares.emplace_back(c, s);
  return result;
}

int64_t contiguity_threshold(const TemporalDemand& demand, int n_max) {
  if (n_max < 1 || n_max > demand.n()) throw std::invalid_argument("n_max must be in [1, n]");
  Rational slack = Rational(n_max) - demand.lower_sum();
  if (slack < Rational(0)) {
    throw infeasible_error("lower bounds sum past the per-slot budget; no window length works");
  }
  Rational gap = demand.upper_gap_min();
  if (slack.is_zero() || gap.is_zero()) {
    throw std::domain_error(
        "contiguity threshold needs slack in the budget and in every band; "
        "for degenerate demands use equality_feasible or test window lengths directly");
  }
  int64_t d_lower = share_resolution(demand.lower());
  int64_t step = std::max(slack.den(), gap.den());
  // every s past d_lower + n*step admits integer counts inside all bands
  return d_lower + static_cast<int64_t>(demand.n()) * step;
}

VirtualShareVector theta_map(int64_t s, std::span<const Rational> weights,
                             const VirtualUserCatalog& catalog) {
  if (s < 1) throw std::invalid_argument("window length must be >= 1");
  if (static_cast<int>(weights.size()) != catalog.n()) {
    throw std::invalid_argument("weight count does not match the catalog");
  }
  check_weights(weights);
  if (weight_sum(weights) > Rational(catalog.n_max())) {
    throw infeasible_error("share sum exceeds the per-slot budget");
  }

  std::vector<int64_t> counts(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    Rational scaled = Rational(s) * weights[i];
    if (!scaled.is_integer()) {
      throw infeasible_error("share " + weights[i].str() +
                             " is not an integer slot count at window length " +
                             std::to_string(s));
    }
    counts[i] = scaled.num();
  }

  // Lay user i's counts[i] slots consecutively on an n_max*s tape, row-major;
  // position p lands in column p % s. A run of length <= s never revisits a
  // column, so each column is a set, and columns hold at most n_max users.
  std::vector<uint32_t> column_mask(s, 0);
  int64_t cursor = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    for (int64_t k = 0; k < counts[i]; ++k, ++cursor) {
      column_mask[cursor % s] |= 1u << i;
    }
  }

  VirtualShareVector out;
  out.window = s;
  out.shares.assign(catalog.m(), Rational(0));
  std::vector<int64_t> mask_count(catalog.m(), 0);
  for (uint32_t mask : column_mask) {
    int j = catalog.index_of(mask);
    if (j < 0) throw std::logic_error("tape column is not a catalog subset");
    ++mask_count[j];
  }
  for (int j = 0; j < catalog.m(); ++j) {
    if (mask_count[j] != 0) out.shares[j] = Rational(mask_count[j], s);
  }
  return out;
}

std::vector<int> build_orr(int64_t s, const TemporalDemand& demand,
                           const VirtualUserCatalog& catalog) {
  if (demand.n() != catalog.n()) throw std::invalid_argument("demand does not match the catalog");
  FeasibilityResult feas = inequality_feasible(s, demand, catalog.n_max());
  if (!feas.feasible) {
    throw infeasible_error("window length " + std::to_string(s) + " infeasible: " + feas.reason);
  }
  VirtualShareVector theta = theta_map(s, feas.witness_shares, catalog);
  std::vector<int> sequence;
  sequence.reserve(s);
  for (int j = 0; j < catalog.m(); ++j) {
    Rational scaled = Rational(s) * theta.shares[j];
    for (int64_t k = 0; k < scaled.num(); ++k) sequence.push_back(j);
  }
  if (static_cast<int64_t>(sequence.size()) != s) {
    throw std::logic_error("block lengths do not fill the window");
  }
  return sequence;
}

}  // namespace shortfair
