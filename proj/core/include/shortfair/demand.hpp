#pragma once

#include <vector>

#include "shortfair/rational.hpp"

namespace shortfair {

// Per-user temporal share bands [lower_i, upper_i], each inside [0, 1].
class TemporalDemand {
 public:
  TemporalDemand(std::vector<Rational> lower, std::vector<Rational> upper);

  int n() const { return static_cast<int>(lower_.size()); }
  const Rational& lower(int i) const { return lower_[i]; }
  const Rational& upper(int i) const { return upper_[i]; }
  const std::vector<Rational>& lower() const { return lower_; }
  const std::vector<Rational>& upper() const { return upper_; }

  Rational lower_sum() const;
  Rational upper_gap_min() const;  // min_i (upper_i - lower_i)
  bool is_equality() const;        // every band degenerate

  // Uniform band, the common benchmark shape.
  static TemporalDemand uniform(int n, Rational lower, Rational upper);

 private:
  std::vector<Rational> lower_;
  std::vector<Rational> upper_;
};

// Slot-count bounds at window length s: minimum ceil(s*lower_i) and
// capacity min(floor(s*upper_i), s).
std::vector<int64_t> min_slot_counts(int64_t s, const TemporalDemand& d);
std::vector<int64_t> max_slot_counts(int64_t s, const TemporalDemand& d);

}  // namespace shortfair
