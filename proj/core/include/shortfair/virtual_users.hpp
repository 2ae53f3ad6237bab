#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace shortfair {

// Catalog of all user subsets of size <= n_max, the empty set included.
// Order is fixed: by subset size, then lexicographically on the sorted
// member lists. Index 0 is always the empty subset; strategies and CSV
// columns refer to subsets through these indices.
class VirtualUserCatalog {
 public:
  static VirtualUserCatalog enumerate(int n, int n_max);

  int n() const { return n_; }
  int n_max() const { return n_max_; }
  int m() const { return static_cast<int>(masks_.size()); }

  uint32_t mask(int j) const { return masks_[j]; }
  bool contains(int j, int user) const { return (masks_[j] >> user) & 1u; }
  int subset_size(int j) const { return __builtin_popcount(masks_[j]); }
  std::vector<int> members(int j) const;  // ascending, 0-based

  // "-" for the empty subset, otherwise 1-based members joined with '+'.
  std::string label(int j) const;

  // -1 when the mask is not in the catalog (too large, or out-of-range bit).
  int index_of(uint32_t mask) const;

 private:
  int n_ = 0;
  int n_max_ = 0;
  std::vector<uint32_t> masks_;
  std::unordered_map<uint32_t, int> index_;
};

}  // namespace shortfair
