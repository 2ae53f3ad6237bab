#pragma once

#include <memory>
#include <span>
#include <vector>

#include "shortfair/rng.hpp"
#include "shortfair/virtual_users.hpp"

namespace shortfair {

// Per-slot performance source: fills one value per catalog subset. Instances
// are immutable after construction; all randomness flows through the caller's
// stream, so one sampler can serve many trials concurrently.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual int m() const = 0;
  virtual void sample(RngStream& rng, std::span<double> out) const = 0;

  std::vector<double> sample(RngStream& rng) const {
    std::vector<double> out(m());
    sample(rng, out);
    return out;
  }
};

// The same vector every slot. Entry 0 (the empty subset) must be 0.
class FixedSampler final : public Sampler {
 public:
  using Sampler::sample;
  explicit FixedSampler(std::vector<double> rates);
  int m() const override { return static_cast<int>(rates_.size()); }
  void sample(RngStream&, std::span<double> out) const override;

 private:
  std::vector<double> rates_;
};

// Independent exponential draws, one per subset, with the given means.
class ExponentialSampler final : public Sampler {
 public:
  using Sampler::sample;
  explicit ExponentialSampler(std::vector<double> means);
  int m() const override { return static_cast<int>(means_.size()); }
  void sample(RngStream& rng, std::span<double> out) const override;

 private:
  std::vector<double> means_;
};

// Independent lognormal draws with the given means and a common sigma of the
// underlying normal. sigma 0 degenerates to the fixed sampler.
class LognormalSampler final : public Sampler {
 public:
  using Sampler::sample;
  LognormalSampler(std::vector<double> means, double sigma);
  int m() const override { return static_cast<int>(means_.size()); }
  void sample(RngStream& rng, std::span<double> out) const override;

 private:
  std::vector<double> mu_log_;  // = log(mean) - sigma^2/2; mean 0 kept as a pin
  std::vector<double> means_;
  double sigma_;
};

}  // namespace shortfair
