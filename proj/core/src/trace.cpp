#include "shortfair/trace.hpp"

#include <stdexcept>

namespace shortfair {

ScheduleTrace::ScheduleTrace(int64_t s) : window(s) {
  if (s < 1) throw std::invalid_argument("window length must be >= 1");
  choices.reserve(s);
  realized.reserve(s);
}

void ScheduleTrace::record(int choice, double value) {
  if (complete()) throw std::out_of_range("trace already spans its window");
  choices.push_back(choice);
  realized.push_back(value);
}

Rational ShareVector::share(int user) const {
  if (t == 0) throw std::domain_error("share undefined before the first slot");
  return Rational(counts[user], t);
}

ShareVector accumulate_counts(const ScheduleTrace& trace, const VirtualUserCatalog& catalog,
                              int64_t t) {
  if (t < 0 || t > trace.t()) throw std::out_of_range("t outside the recorded prefix");
  ShareVector sv;
  sv.counts.assign(catalog.n(), 0);
  sv.t = t;
  for (int64_t k = 0; k < t; ++k) {
    uint32_t mask = catalog.mask(trace.choices[k]);
    while (mask != 0) {
      int i = __builtin_ctz(mask);
      ++sv.counts[i];
      mask &= mask - 1;
    }
  }
  return sv;
}

Rational temporal_share(const ScheduleTrace& trace, const VirtualUserCatalog& catalog, int user,
                        int64_t t) {
  if (t < 1) throw std::domain_error("share undefined before the first slot");
  if (t > trace.t()) throw std::out_of_range("t outside the recorded prefix");
  if (user < 0 || user >= catalog.n()) throw std::out_of_range("user index");
  int64_t count = 0;
  for (int64_t k = 0; k < t; ++k) {
    if (catalog.contains(trace.choices[k], user)) ++count;
  }
  return Rational(count, t);
}

FairnessReport check_fairness(const ScheduleTrace& trace, const VirtualUserCatalog& catalog,
                              const TemporalDemand& demand) {
  if (!trace.complete()) throw std::invalid_argument("fairness is judged on a complete window");
  ShareVector sv = accumulate_counts(trace, catalog, trace.window);
  FairnessReport report;
  for (int i = 0; i < catalog.n(); ++i) {
    Rational a = sv.share(i);
    if (a < demand.lower(i) || a > demand.upper(i)) {
      report.ok = false;
      report.violations.push_back({i, a});
    }
  }
  return report;
}

double average_utility(const ScheduleTrace& trace, int64_t t) {
  if (t < 1) throw std::domain_error("average utility undefined before the first slot");
  if (t > trace.t()) throw std::out_of_range("t outside the recorded prefix");
  double sum = 0.0;
  for (int64_t k = 0; k < t; ++k) sum += trace.realized[k];
  return sum / static_cast<double>(t);
}

}  // namespace shortfair
