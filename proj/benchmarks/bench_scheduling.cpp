#include <benchmark/benchmark.h>

#include <vector>

#include "shortfair/calibration.hpp"
#include "shortfair/channel.hpp"
#include "shortfair/demand.hpp"
#include "shortfair/feasibility.hpp"
#include "shortfair/oracle.hpp"
#include "shortfair/rng.hpp"
#include "shortfair/sampler.hpp"
#include "shortfair/strategies.hpp"
#include "shortfair/virtual_users.hpp"

using namespace shortfair;

namespace {

// five users, pairs per slot, everyone owed a fifth of the window
struct PairsFixture {
  VirtualUserCatalog cat = VirtualUserCatalog::enumerate(5, 2);
  TemporalDemand demand = TemporalDemand::uniform(5, Rational(1, 5), Rational(1));
  ExponentialSampler sampler = make_sampler();

  static ExponentialSampler make_sampler() {
    std::vector<double> means{0.0};
    for (int j = 1; j < 16; ++j) means.push_back(1.0 + 0.1 * j);
    return ExponentialSampler(means);
  }
};

void BM_RationalArithmetic(benchmark::State& state) {
  Rational a(355, 113), b(217, 68);
  for (auto _ : state) {
    Rational c = a * b + a / b - a;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_RationalArithmetic);

void BM_CatalogEnumeration(benchmark::State& state) {
  for (auto _ : state) {
    auto cat = VirtualUserCatalog::enumerate(static_cast<int>(state.range(0)), 2);
    benchmark::DoNotOptimize(cat.m());
  }
}
BENCHMARK(BM_CatalogEnumeration)->Arg(5)->Arg(10)->Arg(15);

void BM_FeasibilityCheck(benchmark::State& state) {
  PairsFixture fx;
  int64_t s = state.range(0);
  for (auto _ : state) {
    auto result = inequality_feasible(s, fx.demand, 2);
    benchmark::DoNotOptimize(result.feasible);
  }
}
BENCHMARK(BM_FeasibilityCheck)->Arg(10)->Arg(1000)->Arg(100000);

void BM_ConstrainedWindow(benchmark::State& state) {
  PairsFixture fx;
  int64_t s = state.range(0);
  ThresholdVector lambda(5, 0.0);
  AtbsStrategy strat{lambda};
  uint64_t trial = 0;
  for (auto _ : state) {
    RngStream rng(substream_seed(7, {trial++}));
    auto result = run_window(strat, s, fx.demand, fx.cat, fx.sampler, rng);
    benchmark::DoNotOptimize(result.stop_time);
  }
  state.SetItemsProcessed(state.iterations() * s);
}
BENCHMARK(BM_ConstrainedWindow)->Arg(10)->Arg(100)->Arg(1000);

void BM_UnconstrainedWindow(benchmark::State& state) {
  PairsFixture fx;
  int64_t s = state.range(0);
  TbsStrategy strat{ThresholdVector(5, 0.0)};
  uint64_t trial = 0;
  for (auto _ : state) {
    RngStream rng(substream_seed(8, {trial++}));
    auto result = run_window(strat, s, fx.demand, fx.cat, fx.sampler, rng);
    benchmark::DoNotOptimize(result.trace.realized.back());
  }
  state.SetItemsProcessed(state.iterations() * s);
}
BENCHMARK(BM_UnconstrainedWindow)->Arg(10)->Arg(100)->Arg(1000);

void BM_PairPowerSplit(benchmark::State& state) {
  CellConfig config;
  RngStream rng(3);
  std::vector<double> gains;
  for (int i = 0; i < 1024; ++i) gains.push_back(rng.exponential(5.0));
  size_t k = 0;
  for (auto _ : state) {
    double r = pair_symmetric_sum_rate(gains[k & 1023], gains[(k + 1) & 1023], config);
    ++k;
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PairPowerSplit);

void BM_ExactOracle(benchmark::State& state) {
  VirtualUserCatalog cat = VirtualUserCatalog::enumerate(2, 1);
  TemporalDemand demand = TemporalDemand::uniform(2, Rational(1, 4), Rational(3, 4));
  std::vector<Rational> rates{Rational(0), Rational(1), Rational(2)};
  int64_t s = state.range(0);
  for (auto _ : state) {
    auto result = oracle_optimal_utility(s, demand, cat, rates);
    benchmark::DoNotOptimize(result.utility);
  }
}
BENCHMARK(BM_ExactOracle)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
