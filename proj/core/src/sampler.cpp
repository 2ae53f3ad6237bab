#include "shortfair/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "shortfair/errors.hpp"

namespace shortfair {

namespace {

void check_rates(const std::vector<double>& values, bool require_nonneg) {
  if (values.empty()) throw config_error("sampler needs at least one subset entry");
  for (double v : values) {
    if (!std::isfinite(v)) throw config_error("sampler entries must be finite");
    if (require_nonneg && v < 0.0) throw config_error("sampler entries must be >= 0");
  }
  if (values.front() != 0.0) {
    throw config_error("the empty subset (catalog index 0) must have rate 0");
  }
}

}  // namespace

FixedSampler::FixedSampler(std::vector<double> rates) : rates_(std::move(rates)) {
  check_rates(rates_, false);
}

void FixedSampler::sample(RngStream&, std::span<double> out) const {
  std::copy(rates_.begin(), rates_.end(), out.begin());
}

ExponentialSampler::ExponentialSampler(std::vector<double> means) : means_(std::move(means)) {
  check_rates(means_, true);
}

void ExponentialSampler::sample(RngStream& rng, std::span<double> out) const {
  for (size_t j = 0; j < means_.size(); ++j) out[j] = rng.exponential(means_[j]);
}

LognormalSampler::LognormalSampler(std::vector<double> means, double sigma)
    : means_(std::move(means)), sigma_(sigma) {
  check_rates(means_, true);
  if (!std::isfinite(sigma_) || sigma_ < 0.0) throw config_error("lognormal sigma must be >= 0");
  mu_log_.resize(means_.size(), 0.0);
  for (size_t j = 0; j < means_.size(); ++j) {
    if (means_[j] > 0.0) mu_log_[j] = std::log(means_[j]) - 0.5 * sigma_ * sigma_;
  }
}

void LognormalSampler::sample(RngStream& rng, std::span<double> out) const {
  for (size_t j = 0; j < means_.size(); ++j) {
    if (means_[j] == 0.0) {
      out[j] = 0.0;
    } else if (sigma_ == 0.0) {
      out[j] = means_[j];
    } else {
      out[j] = std::exp(mu_log_[j] + sigma_ * rng.normal01());
    }
  }
}

}  // namespace shortfair
