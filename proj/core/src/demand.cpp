#include "shortfair/demand.hpp"

#include <algorithm>

#include "shortfair/errors.hpp"

namespace shortfair {

TemporalDemand::TemporalDemand(std::vector<Rational> lower, std::vector<Rational> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw config_error("demand needs matching nonempty lower/upper lists");
  }
  const Rational zero(0), one(1);
  for (size_t i = 0; i < lower_.size(); ++i) {
    if (lower_[i] < zero || upper_[i] > one || lower_[i] > upper_[i]) {
      throw config_error("demand band for user " + std::to_string(i + 1) +
                         " must satisfy 0 <= lower <= upper <= 1");
    }
  }
}

Rational TemporalDemand::lower_sum() const {
  Rational s(0);
  for (const Rational& w : lower_) s += w;
  return s;
}

Rational TemporalDemand::upper_gap_min() const {
  Rational g = upper_[0] - lower_[0];
  for (size_t i = 1; i < lower_.size(); ++i) g = std::min(g, upper_[i] - lower_[i]);
  return g;
}

bool TemporalDemand::is_equality() const {
  for (size_t i = 0; i < lower_.size(); ++i) {
    if (lower_[i] != upper_[i]) return false;
  }
  return true;
}

TemporalDemand TemporalDemand::uniform(int n, Rational lower, Rational upper) {
  return TemporalDemand(std::vector<Rational>(n, lower), std::vector<Rational>(n, upper));
}

std::vector<int64_t> min_slot_counts(int64_t s, const TemporalDemand& d) {
  std::vector<int64_t> out(d.n());
  for (int i = 0; i < d.n(); ++i) out[i] = ceil_mul(s, d.lower(i));
  return out;
}

std::vector<int64_t> max_slot_counts(int64_t s, const TemporalDemand& d) {
  std::vector<int64_t> out(d.n());
  for (int i = 0; i < d.n(); ++i) out[i] = std::min(floor_mul(s, d.upper(i)), s);
  return out;
}

}  // namespace shortfair
