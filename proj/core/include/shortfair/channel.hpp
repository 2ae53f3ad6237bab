#pragma once

#include <cstdint>
#include <vector>

#include "shortfair/rng.hpp"
#include "shortfair/sampler.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

// Single-cell downlink with users dropped uniformly on an annulus, log-distance
// path loss with lognormal shadowing, and Rayleigh block fading per slot.
struct CellConfig {
  int n_users = 5;
  double inner_radius_m = 20.0;
  double outer_radius_m = 100.0;
  double tx_power_dbm = 30.0;
  double noise_power_dbm = -94.0;
  double pathloss_ref_db = 38.0;  // at 1 m
  double pathloss_exponent = 3.0;
  double shadowing_sigma_db = 8.0;
  double min_snr_db = -6.5;   // below this the slot carries nothing
  double max_rate = 4.8;      // bits/s/Hz cap
  double bandwidth_efficiency = 0.75;

  void validate() const;
};

struct UserChannelState {
  double distance_m = 0.0;
  double shadowing_db = 0.0;
  double mean_snr_db = 0.0;
};

// One placement of the cell's users; the draw order (distance then shadowing,
// user by user) is part of the determinism contract.
std::vector<UserChannelState> drop_users(const CellConfig& config, uint64_t seed);

// Shannon rate with an SNR floor and a rate cap, snr given in linear scale.
double truncated_shannon_rate(double snr_linear, const CellConfig& config);

// Largest symmetric sum rate for two users sharing the slot via superposition:
// a power split is bisected until both users' rates meet, then each side is
// truncated individually and the two are added.
double pair_symmetric_sum_rate(double snr_a_linear, double snr_b_linear,
                               const CellConfig& config);

// Per-slot subset performance for a dropped cell: 0 for the empty subset, the
// truncated single-user rate for singletons, the symmetric superposition sum
// for pairs. Catalogs with n_max > 2 are rejected.
class CellSampler final : public Sampler {
 public:
  using Sampler::sample;
  CellSampler(std::vector<UserChannelState> users, const VirtualUserCatalog& catalog,
              const CellConfig& config);
  int m() const override { return static_cast<int>(subsets_.size()); }
  void sample(RngStream& rng, std::span<double> out) const override;

  const std::vector<UserChannelState>& users() const { return users_; }

 private:
  struct Subset {
    int a = -1;  // -1 marks the empty subset
    int b = -1;  // second member for pairs
  };
  std::vector<UserChannelState> users_;
  std::vector<double> mean_snr_linear_;
  std::vector<Subset> subsets_;
  CellConfig config_;
};

}  // namespace shortfair
