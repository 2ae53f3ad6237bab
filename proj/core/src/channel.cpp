#include "shortfair/channel.hpp"

#include <cmath>

#include "shortfair/errors.hpp"

namespace shortfair {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double shannon(double snr, double eta) { return eta * std::log2(1.0 + snr); }

}  // namespace

void CellConfig::validate() const {
  if (n_users < 1 || n_users > 20) throw config_error("cell needs 1..20 users");
  if (!(inner_radius_m > 0.0) || !(outer_radius_m > inner_radius_m)) {
    throw config_error("cell radii must satisfy 0 < inner < outer");
  }
  if (!(pathloss_exponent > 0.0)) throw config_error("pathloss exponent must be > 0");
  if (shadowing_sigma_db < 0.0) throw config_error("shadowing sigma must be >= 0");
  if (!(max_rate > 0.0)) throw config_error("rate cap must be > 0");
  if (!(bandwidth_efficiency > 0.0)) throw config_error("bandwidth efficiency must be > 0");
}

std::vector<UserChannelState> drop_users(const CellConfig& config, uint64_t seed) {
  config.validate();
  RngStream rng(seed);
  std::vector<UserChannelState> users(config.n_users);
  double r_in2 = config.inner_radius_m * config.inner_radius_m;
  double r_out2 = config.outer_radius_m * config.outer_radius_m;
  for (UserChannelState& u : users) {
    // uniform over the annulus area, then shadowing
    u.distance_m = std::sqrt(r_in2 + rng.uniform01() * (r_out2 - r_in2));
    u.shadowing_db = rng.normal(0.0, config.shadowing_sigma_db);
    double pathloss_db = config.pathloss_ref_db +
                         10.0 * config.pathloss_exponent * std::log10(u.distance_m);
    u.mean_snr_db = config.tx_power_dbm - pathloss_db + u.shadowing_db - config.noise_power_dbm;
  }
  return users;
}

double truncated_shannon_rate(double snr_linear, const CellConfig& config) {
  if (snr_linear < db_to_linear(config.min_snr_db)) return 0.0;
  return std::min(shannon(snr_linear, config.bandwidth_efficiency), config.max_rate);
}

double pair_symmetric_sum_rate(double snr_a_linear, double snr_b_linear,
                               const CellConfig& config) {
  double strong = std::max(snr_a_linear, snr_b_linear);
  double weak = std::min(snr_a_linear, snr_b_linear);
  double eta = config.bandwidth_efficiency;

  // beta is the power fraction handed to the weak user; the weak user decodes
  // against the strong user's share as interference, the strong user cancels.
  auto weak_sinr = [&](double beta) { return beta * weak / (1.0 + (1.0 - beta) * weak); };
  auto strong_sinr = [&](double beta) { return (1.0 - beta) * strong; };

  double lo = 0.0, hi = 1.0, beta = 0.5;
  for (int iter = 0; iter < 30; ++iter) {
    beta = 0.5 * (lo + hi);
    double rw = shannon(weak_sinr(beta), eta);
    double rs = shannon(strong_sinr(beta), eta);
    if (std::fabs(rw - rs) <= 1e-9) break;
    if (rw < rs) {
      lo = beta;  // weak user needs more power
    } else {
      hi = beta;
    }
  }
  return truncated_shannon_rate(weak_sinr(beta), config) +
         truncated_shannon_rate(strong_sinr(beta), config);
}

CellSampler::CellSampler(std::vector<UserChannelState> users, const VirtualUserCatalog& catalog,
                         const CellConfig& config)
    : users_(std::move(users)), config_(config) {
  config_.validate();
  if (static_cast<int>(users_.size()) != catalog.n()) {
    throw config_error("dropped user count does not match the catalog");
  }
  if (catalog.n_max() > 2) {
    throw config_error("the cell model serves at most two users per slot");
  }
  mean_snr_linear_.reserve(users_.size());
  for (const UserChannelState& u : users_) {
    mean_snr_linear_.push_back(db_to_linear(u.mean_snr_db));
  }
  subsets_.resize(catalog.m());
  for (int j = 0; j < catalog.m(); ++j) {
    std::vector<int> mem = catalog.members(j);
    if (mem.size() >= 1) subsets_[j].a = mem[0];
    if (mem.size() == 2) subsets_[j].b = mem[1];
  }
}

void CellSampler::sample(RngStream& rng, std::span<double> out) const {
  // Rayleigh block fading: one unit-mean exponential power gain per user per slot
  double snr[32];
  for (size_t i = 0; i < users_.size(); ++i) {
    snr[i] = mean_snr_linear_[i] * rng.exponential(1.0);
  }
  for (size_t j = 0; j < subsets_.size(); ++j) {
    const Subset& sub = subsets_[j];
    if (sub.a < 0) {
      out[j] = 0.0;
    } else if (sub.b < 0) {
      out[j] = truncated_shannon_rate(snr[sub.a], config_);
    } else {
      out[j] = pair_symmetric_sum_rate(snr[sub.a], snr[sub.b], config_);
    }
  }
}

}  // namespace shortfair
