#include "zerorate/wardrop.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "random_draws.hpp"
#include "zerorate/errors.hpp"

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

TEST_CASE("closed form matches the frozen benchmark") {
  const auto flows = solve_wardrop_two_cp(benchmark(), {{0.0, 1.0}});
  CHECK(flows.alpha == doctest::Approx(0.50251249968751566).epsilon(1e-12));
  CHECK(flows.rates[0] == doctest::Approx(698.00999975001253).epsilon(1e-9));
  CHECK(flows.rates[1] == doctest::Approx(501.99000024999270).epsilon(1e-9));
  CHECK(flows.rates[0] + flows.rates[1] == doctest::Approx(1200.0));
}

TEST_CASE("closed form agrees with an independent cost-equalizing oracle") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const MarketParams p = testsupport::draw_market(rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const SponsorshipProfile profile{{u(rng), u(rng)}};
    const auto flows = solve_wardrop_two_cp(p, profile);
    const auto oracle = testsupport::oracle_split_two_cp(
        p.capacities[0], p.capacities[1], p.total_rate, p.access_price,
        profile.gammas[0], profile.gammas[1]);
    CHECK(flows.rates[0] ==
          doctest::Approx(oracle[0]).epsilon(1e-8).scale(p.total_rate));
  }
}

TEST_CASE("bisection reproduces the closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const MarketParams p = testsupport::draw_market(rng);
    const SponsorshipProfile profile{{u(rng), u(rng)}};
    const auto a = solve_wardrop_two_cp(p, profile);
    const auto b = solve_wardrop_n_cp(p, profile);
    CHECK(std::abs(a.rates[0] - b.rates[0]) <= 1e-10 * p.total_rate);
    CHECK(std::abs(a.rates[1] - b.rates[1]) <= 1e-10 * p.total_rate);
    CHECK(a.alpha == doctest::Approx(b.alpha).epsilon(1e-10));
  }
}

TEST_CASE("equilibrium conditions hold for many CPs with zero flows allowed") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + static_cast<int>(u(rng) * 8);
    MarketParams p;
    for (int i = 0; i < n; ++i) p.capacities.push_back(50.0 + 950.0 * u(rng));
    p.access_price = 0.01 + 2.0 * u(rng);
    double total = 0.0;
    for (double m : p.capacities) total += m;
    // Low lambdas force some CPs out of the equilibrium support.
    p.total_rate = total * (0.05 + 0.9 * u(rng));
    SponsorshipProfile profile{std::vector<double>(static_cast<size_t>(n))};
    for (auto& g : profile.gammas) g = u(rng);

    const auto flows = solve_wardrop_n_cp(p, profile);
    double sum = 0.0;
    for (size_t i = 0; i < flows.rates.size(); ++i) {
      CHECK(flows.rates[i] >= 0.0);
      sum += flows.rates[i];
      const double cost = user_cost(flows.rates[i], p.capacities[i],
                                    p.access_price, profile.gammas[i]);
      if (flows.rates[i] > 0.0) {
        // used CPs sit exactly at the common cost
        CHECK(std::abs(cost - flows.alpha) < 1e-8);
      } else {
        // unused CPs may not undercut it
        CHECK(cost >= flows.alpha - 1e-8);
      }
    }
    CHECK(std::abs(sum - p.total_rate) < 1e-8 * std::max(1.0, p.total_rate));
  }
}

TEST_CASE("sponsoring lowers your price and raises your share") {
  const MarketParams p = benchmark();
  const auto neutral = solve_wardrop_two_cp(p, {{1.0, 1.0}});
  const auto sponsored = solve_wardrop_two_cp(p, {{0.0, 1.0}});
  CHECK(sponsored.rates[0] > neutral.rates[0]);

  // lambda1* is nonincreasing in gamma1 across the whole range
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 20; ++j) {
    const double g1 = j / 20.0;
    const auto f = solve_wardrop_two_cp(p, {{g1, 0.5}});
    CHECK(f.rates[0] <= prev + 1e-12);
    prev = f.rates[0];
  }
}

TEST_CASE("exogenous modes") {
  MarketParams p = benchmark();
  p.exogenous_rate = 100.0;
  const SponsorshipProfile profile{{0.0, 1.0}};

  p.exogenous_mode = ExogenousMode::NonCongesting;
  const auto nc = solve_wardrop_two_cp(p, profile);
  // usual split identical to the lambda0=0 solution, exogenous added on top
  MarketParams base = benchmark();
  const auto plain = solve_wardrop_two_cp(base, profile);
  CHECK(nc.rates[0] == doctest::Approx(plain.rates[0]).epsilon(1e-12));
  CHECK(nc.effective_rates[0] ==
        doctest::Approx(plain.rates[0] + 100.0).epsilon(1e-12));
  CHECK(nc.effective_rates[1] == doctest::Approx(nc.rates[1]).epsilon(1e-12));
  CHECK(nc.total_effective == doctest::Approx(1300.0));

  p.exogenous_mode = ExogenousMode::Congesting;
  const auto cg = solve_wardrop_two_cp(p, profile);
  // the sponsored CP's capacity is reduced, so its usual share shrinks
  CHECK(cg.rates[0] < nc.rates[0]);
  CHECK(cg.rates[0] + cg.rates[1] == doctest::Approx(1200.0));
  // equilibrium cost equalization on the reduced capacity
  CHECK(user_cost(cg.rates[0], 700.0 - 100.0, 0.5, 0.0) ==
        doctest::Approx(cg.alpha).epsilon(1e-10));
}

TEST_CASE("invalid inputs are rejected") {
  MarketParams p = benchmark();
  p.total_rate = 1700.0;  // breaks A1 and A2
  CHECK_THROWS_AS(solve_wardrop_two_cp(p, {{0.0, 1.0}}),
                  AssumptionViolation);
  CHECK_THROWS_AS(solve_wardrop_n_cp(p, {{0.0, 1.0}}), AssumptionViolation);

  p = benchmark();
  CHECK_THROWS_AS(solve_wardrop_two_cp(p, {{0.0, 1.0, 0.5}}),
                  PreconditionViolation);
  CHECK_THROWS_AS(solve_wardrop_two_cp(p, {{-0.1, 1.0}}),
                  PreconditionViolation);
}
