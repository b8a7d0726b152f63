#include <benchmark/benchmark.h>

#include "zerorate/cp_game.hpp"
#include "zerorate/multi_isp.hpp"
#include "zerorate/wardrop.hpp"

namespace {

using namespace zerorate;

MarketParams benchmark_market() {
  MarketParams p;
  p.capacities = {700.0, 900.0};
  p.total_rate = 1200.0;
  p.access_price = 0.5;
  p.repayment = 0.9;
  return p;
}

void BM_ClosedFormSolver(benchmark::State& state) {
  const MarketParams p = benchmark_market();
  const SponsorshipProfile profile{{0.0, 1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_wardrop_two_cp(p, profile));
  }
}
BENCHMARK(BM_ClosedFormSolver);

void BM_BisectionSolver(benchmark::State& state) {
  MarketParams p = benchmark_market();
  const int n = static_cast<int>(state.range(0));
  p.capacities.clear();
  for (int i = 0; i < n; ++i) {
    p.capacities.push_back(400.0 + 100.0 * i);
  }
  p.total_rate = 0.8 * (400.0 * n + 100.0 * n * (n - 1) / 2.0);
  SponsorshipProfile profile{std::vector<double>(static_cast<size_t>(n))};
  for (int i = 0; i < n; ++i) {
    profile.gammas[static_cast<size_t>(i)] = (i % 2) ? 1.0 : 0.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_wardrop_n_cp(p, profile));
  }
}
BENCHMARK(BM_BisectionSolver)->Arg(2)->Arg(4)->Arg(10);

void BM_PneClassification(benchmark::State& state) {
  MarketParams p = benchmark_market();
  p.exogenous_rate = 150.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_pne(p));
  }
}
BENCHMARK(BM_PneClassification);

void BM_DuopolyTable(benchmark::State& state) {
  DuopolyParams d;
  d.capacities = {700.0, 900.0};
  d.total_rate = 900.0;
  d.price_isp1 = 0.7;
  d.price_isp2 = 0.9;
  d.repayment = 0.9;
  d.exogenous_rate = 300.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_game_table_multi(d));
  }
}
BENCHMARK(BM_DuopolyTable);

}  // namespace

BENCHMARK_MAIN();
