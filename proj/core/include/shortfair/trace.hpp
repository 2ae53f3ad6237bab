#pragma once

#include <cstdint>
#include <vector>

#include "shortfair/demand.hpp"
#include "shortfair/rational.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

// One scheduling run over a window: the chosen catalog index and the realized
// performance value for every elapsed slot.
struct ScheduleTrace {
  int64_t window = 0;
  std::vector<int> choices;
  std::vector<double> realized;

  explicit ScheduleTrace(int64_t s);
  void record(int choice, double value);
  int64_t t() const { return static_cast<int64_t>(choices.size()); }
  bool complete() const { return t() == window; }
};

// Served-slot counts per user after the first t slots.
struct ShareVector {
  std::vector<int64_t> counts;
  int64_t t = 0;

  Rational share(int user) const;  // counts[user] / t, exact
};

ShareVector accumulate_counts(const ScheduleTrace& trace, const VirtualUserCatalog& catalog,
                              int64_t t);

// Fraction of the first t slots in which `user` was part of the served subset.
Rational temporal_share(const ScheduleTrace& trace, const VirtualUserCatalog& catalog, int user,
                        int64_t t);

struct FairnessViolation {
  int user = 0;
  Rational share;
};

struct FairnessReport {
  bool ok = true;
  std::vector<FairnessViolation> violations;
};

// End-of-window band check; the trace must be complete.
FairnessReport check_fairness(const ScheduleTrace& trace, const VirtualUserCatalog& catalog,
                              const TemporalDemand& demand);

// Mean realized performance over the first t slots.
double average_utility(const ScheduleTrace& trace, int64_t t);

}  // namespace shortfair
