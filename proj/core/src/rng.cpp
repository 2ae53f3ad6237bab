#include "shortfair/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shortfair {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t substream_seed(uint64_t master, std::initializer_list<uint64_t> tags) {
  uint64_t h = splitmix64(master);
  for (uint64_t t : tags) h = splitmix64(h ^ t);
  return h;
}

double RngStream::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::exponential(double mean) {
  if (mean < 0.0) throw std::invalid_argument("exponential mean must be >= 0");
  if (mean == 0.0) return 0.0;
  // 1 - uniform01() lies in (0, 1], so the log is finite
  return -mean * std::log(1.0 - uniform01());
}

double RngStream::normal01() {
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace shortfair
