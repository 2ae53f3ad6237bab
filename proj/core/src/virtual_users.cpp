#include "shortfair/virtual_users.hpp"

#include "shortfair/errors.hpp"

namespace shortfair {

VirtualUserCatalog VirtualUserCatalog::enumerate(int n, int n_max) {
  if (n < 1 || n > 20) throw config_error("user count must be in [1, 20]");
  if (n_max < 1 || n_max > n) throw config_error("n_max must be in [1, n]");

  VirtualUserCatalog cat;
  cat.n_ = n;
  cat.n_max_ = n_max;
  cat.masks_.push_back(0);
  for (int k = 1; k <= n_max; ++k) {
    // lexicographic k-combinations of {0, ..., n-1}
    std::vector<int> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      uint32_t mask = 0;
      for (int i : comb) mask |= 1u << i;
      cat.masks_.push_back(mask);
      int i = k - 1;
      while (i >= 0 && comb[i] == n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  cat.index_.reserve(cat.masks_.size());
  for (int j = 0; j < cat.m(); ++j) cat.index_.emplace(cat.masks_[j], j);
  return cat;
}

std::vector<int> VirtualUserCatalog::members(int j) const {
  std::vector<int> out;
  uint32_t mask = masks_[j];
  for (int i = 0; i < n_; ++i) {
    if ((mask >> i) & 1u) out.push_back(i);
  }
  return out;
}

std::string VirtualUserCatalog::label(int j) const {
  if (masks_[j] == 0) return "-";
  std::string out;
  for (int i : members(j)) {
    if (!out.empty()) out += '+';
    out += std::to_string(i + 1);
  }
  return out;
}

int VirtualUserCatalog::index_of(uint32_t mask) const {
  auto it = index_.find(mask);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace shortfair
