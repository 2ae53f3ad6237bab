#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace shortfair {

// Deterministic seed derivation: the master seed plus a handful of tag words
// (strategy index, window length, trial number, ...) always map to the same
// substream seed, independent of how work is split across threads.
uint64_t substream_seed(uint64_t master, std::initializer_list<uint64_t> tags);

// One random stream. The variate transforms are spelled out here instead of
// using <random> distributions so that a fixed seed yields the same bytes on
// every standard library.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }
  double uniform01();                    // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double exponential(double mean);       // mean 0 gives identically 0
  double normal01();                     // Box-Muller, one draw per call
  double normal(double mu, double sigma) { return mu + sigma * normal01(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace shortfair
