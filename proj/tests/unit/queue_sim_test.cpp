#include "zerorate/queue_sim.hpp"

#include <cmath>

#include "doctest.h"
#include "zerorate/errors.hpp"
#include "zerorate/wardrop.hpp"

using namespace zerorate;

namespace {

MarketParams benchmark() {
  MarketParams p;
  p.capacities = {700.0, 900.0};
  p.total_rate = 1200.0;
  p.access_price = 0.5;
  p.repayment = 0.9;
  return p;
}

}  // namespace

TEST_CASE("single M/M/1 queue reproduces the textbook sojourn") {
  MarketParams p;
  p.capacities = {2.0};
  p.total_rate = 1.0;
  EquilibriumFlows flows;
  flows.rates = {1.0};
  flows.effective_rates = {1.0};
  flows.total_effective = 1.0;
  SimConfig cfg;
  cfg.horizon = 1'000'000;
  cfg.seed = 5;
  const SimStats stats = simulate(p, flows, cfg);
  CHECK(std::abs(stats.mean_sojourn[0] - 1.0) <= 3.0 * stats.sojourn_stderr[0]);
  CHECK(stats.arrival_fraction[0] == doctest::Approx(1.0));
}

TEST_CASE("benchmark instance within three standard errors") {
  const MarketParams p = benchmark();
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimConfig cfg;
  cfg.seed = 1;
  const SimStats stats = simulate(p, flows, cfg);
  const TheoryComparison cmp = compare_to_theory(stats, flows);
  CHECK(std::abs(cmp.z_scores[0]) <= 3.0);
  CHECK(std::abs(cmp.z_scores[1]) <= 3.0);
  CHECK(std::abs(cmp.overall_delay_z) <= 3.0);
  CHECK(cmp.passed);
}

TEST_CASE("routing frequencies converge") {
  const MarketParams p = benchmark();
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimConfig cfg;
  cfg.seed = 9;
  const SimStats stats = simulate(p, flows, cfg);
  double counted = 0.0;
  for (auto c : stats.arrivals) counted += static_cast<double>(c);
  for (size_t i = 0; i < 2; ++i) {
    const double target = flows.rates[i] / p.total_rate;
    const double bound =
        4.0 * std::sqrt(target * (1.0 - target) / counted);
    CHECK(std::abs(stats.arrival_fraction[i] - target) < bound);
  }
  CHECK(stats.arrival_fraction[0] + stats.arrival_fraction[1] ==
        doctest::Approx(1.0));
}

TEST_CASE("identical seeds give identical statistics") {
  const MarketParams p = benchmark();
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimConfig cfg;
  cfg.horizon = 100'000;
  cfg.seed = 77;
  const SimStats a = simulate(p, flows, cfg);
  const SimStats b = simulate(p, flows, cfg);
  CHECK(a.mean_sojourn[0] == b.mean_sojourn[0]);
  CHECK(a.mean_sojourn[1] == b.mean_sojourn[1]);
  CHECK(a.sojourn_stderr[0] == b.sojourn_stderr[0]);
  CHECK(a.overall_mean_delay == b.overall_mean_delay);
  CHECK(a.arrivals[0] == b.arrivals[0]);

  SimConfig other = cfg;
  other.seed = 78;
  const SimStats c = simulate(p, flows, other);
  CHECK(a.mean_sojourn[0] != c.mean_sojourn[0]);
}

TEST_CASE("post-warmup counts add up") {
  const MarketParams p = benchmark();
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimConfig cfg;
  cfg.horizon = 64'000;
  cfg.replications = 32;
  cfg.warmup_fraction = 0.1;
  cfg.seed = 3;
  const SimStats stats = simulate(p, flows, cfg);
  const std::uint64_t per_rep = cfg.horizon / cfg.replications;
  const std::uint64_t expected =
      cfg.replications *
      (per_rep - static_cast<std::uint64_t>(cfg.warmup_fraction * per_rep));
  CHECK(stats.arrivals[0] + stats.arrivals[1] == expected);
}

TEST_CASE("congesting exogenous traffic slows the sponsored queue") {
  MarketParams p = benchmark();
  p.exogenous_rate = 100.0;
  p.exogenous_mode = ExogenousMode::Congesting;
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimConfig cfg;
  cfg.seed = 4;
  const SimStats stats = simulate(p, flows, cfg);
  // enqueued load at CP1 includes the exogenous stream
  CHECK(stats.enqueued_rate[0] ==
        doctest::Approx(flows.rates[0] + 100.0).epsilon(1e-12));
  const TheoryComparison cmp = compare_to_theory(stats, flows);
  CHECK(std::abs(cmp.z_scores[0]) <= 3.0);
  CHECK(std::abs(cmp.z_scores[1]) <= 3.0);

  // NonCongesting: same exogenous rate, but nothing extra enqueued
  p.exogenous_mode = ExogenousMode::NonCongesting;
  const auto flows_nc = solve_wardrop(p, {{0.0, 1.0}});
  const SimStats stats_nc = simulate(p, flows_nc, cfg);
  CHECK(stats_nc.enqueued_rate[0] ==
        doctest::Approx(flows_nc.rates[0]).epsilon(1e-12));
}

TEST_CASE("constructed mismatch fails the comparison") {
  const MarketParams p = benchmark();
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimConfig cfg;
  cfg.seed = 1;
  SimStats stats = simulate(p, flows, cfg);
  stats.mean_sojourn[1] += 1.0;  // far outside any error bar
  const TheoryComparison cmp = compare_to_theory(stats, flows);
  CHECK_FALSE(cmp.passed);
  CHECK(cmp.z_scores[1] > 3.0);
}

TEST_CASE("perfect agreement gives zero z-scores") {
  const MarketParams p = benchmark();
  const auto flows = solve_wardrop(p, {{0.0, 1.0}});
  SimStats stats;
  stats.service_rate = p.capacities;
  stats.enqueued_rate = flows.rates;
  stats.mean_sojourn = {1.0 / (700.0 - flows.rates[0]),
                        1.0 / (900.0 - flows.rates[1])};
  stats.sojourn_stderr = {0.01, 0.01};
  stats.overall_stderr = 0.01;
  stats.overall_mean_delay = flows.rates[0] / 1200.0 * stats.mean_sojourn[0] +
                             flows.rates[1] / 1200.0 * stats.mean_sojourn[1];
  const TheoryComparison cmp = compare_to_theory(stats, flows);
  CHECK(cmp.z_scores[0] == doctest::Approx(0.0));
  CHECK(cmp.z_scores[1] == doctest::Approx(0.0));
  CHECK(cmp.overall_delay_z == doctest::Approx(0.0));
  CHECK(cmp.passed);
}

TEST_CASE("unstable and misconfigured runs are rejected") {
  MarketParams p = benchmark();
  EquilibriumFlows flows;
  flows.rates = {700.0, 500.0};  // CP1 at exactly its service rate
  flows.effective_rates = flows.rates;
  flows.total_effective = 1200.0;
  SimConfig cfg;
  CHECK_THROWS_AS(simulate(p, flows, cfg), UnstableQueue);

  const auto ok = solve_wardrop(p, {{0.0, 1.0}});
  cfg.horizon = 0;
  CHECK_THROWS_AS(simulate(p, ok, cfg), ConfigError);
  cfg.horizon = 1000;
  cfg.warmup_fraction = 1.0;
  CHECK_THROWS_AS(simulate(p, ok, cfg), ConfigError);
  cfg.warmup_fraction = 0.1;
  cfg.replications = 1;
  CHECK_THROWS_AS(simulate(p, ok, cfg), ConfigError);

  EquilibriumFlows wrong = ok;
  wrong.rates.pop_back();
  cfg.replications = 32;
  CHECK_THROWS_AS(simulate(p, wrong, cfg), PreconditionViolation);
}
