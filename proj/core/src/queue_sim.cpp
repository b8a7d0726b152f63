#include "zerorate/queue_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "zerorate/errors.hpp"

namespace zerorate {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RepResult {
  std::vector<double> sum_sojourn;  // per CP
  std::vector<std::uint64_t> count;
  double sum_all = 0.0;
  std::uint64_t count_all = 0;
};

/// One independent replication. Queues start at their stationary occupancy
/// (geometric number in system), so every counted sojourn has the exact
/// steady-state mean and replication averages are unbiased.
RepResult run_replication(const std::vector<double>& capacities,
                          const std::vector<double>& route_cdf,
                          const std::vector<double>& exo_rate, double lambda,
                          std::uint64_t horizon, std::uint64_t warmup,
                          std::uint64_t seed) {
  const size_t n_cps = capacities.size();
  std::mt19937_64 arrival_rng(splitmix64(seed));
  std::vector<std::mt19937_64> service_rng, exo_rng;
  for (size_t i = 0; i < n_cps; ++i) {
    service_rng.emplace_back(splitmix64(seed ^ (2 * i + 1)));
    exo_rng.emplace_back(splitmix64(seed ^ (2 * i + 2)));
  }

  std::exponential_distribution<double> interarrival(lambda);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::exponential_distribution<double>> service;
  std::vector<std::exponential_distribution<double>> exo_gap;
  for (size_t i = 0; i < n_cps; ++i) {
    service.emplace_back(capacities[i]);
    exo_gap.emplace_back(std::max(exo_rate[i], 1e-300));
  }

  std::vector<double> last_departure(n_cps, 0.0);
  std::vector<double> next_exo(n_cps, std::numeric_limits<double>::infinity());
  for (size_t i = 0; i < n_cps; ++i) {
    // Stationary number in system is geometric(1-rho); seed the queue with
    // that many residual-service customers.
    const double rho = (lambda * (route_cdf[i] - (i ? route_cdf[i - 1] : 0.0)) +
                        exo_rate[i]) /
                       capacities[i];
    std::geometric_distribution<std::uint64_t> occupancy(1.0 - rho);
    const std::uint64_t in_system = occupancy(service_rng[i]);
    for (std::uint64_t k = 0; k < in_system; ++k) {
      last_departure[i] += service[i](service_rng[i]);
    }
    if (exo_rate[i] > 0.0) next_exo[i] = exo_gap[i](exo_rng[i]);
  }

  RepResult res;
  res.sum_sojourn.assign(n_cps, 0.0);
  res.count.assign(n_cps, 0);

  double t = 0.0;
  for (std::uint64_t k = 0; k < horizon; ++k) {
    t += interarrival(arrival_rng);
    const double u = unif(arrival_rng);
    size_t cp = n_cps - 1;
    for (size_t i = 0; i < n_cps; ++i) {
      if (u <= route_cdf[i]) {
        cp = i;
        break;
      }
    }
    // Exogenous arrivals before this request occupy the server first.
    while (next_exo[cp] <= t) {
      const double start = std::max(next_exo[cp], last_departure[cp]);
      last_departure[cp] = start + service[cp](service_rng[cp]);
      next_exo[cp] += exo_gap[cp](exo_rng[cp]);
    }
    const double start = std::max(t, last_departure[cp]);
    const double departure = start + service[cp](service_rng[cp]);
    last_departure[cp] = departure;
    if (k >= warmup) {
      res.sum_sojourn[cp] += departure - t;
      res.count[cp] += 1;
      res.sum_all += departure - t;
      res.count_all += 1;
    }
  }
  return res;
}

double stderr_of_means(const std::vector<double>& rep_means) {
  const size_t r = rep_means.size();
  if (r < 2) return std::numeric_limits<double>::infinity();
  const double grand =
      std::accumulate(rep_means.begin(), rep_means.end(), 0.0) /
      static_cast<double>(r);
  double var = 0.0;
  for (double m : rep_means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(r - 1);
  return std::sqrt(var / static_cast<double>(r));
}

}  // namespace

SimStats simulate(const MarketParams& params, const EquilibriumFlows& flows,
                  const SimConfig& config) {
  if (config.horizon < 1) {
    throw ConfigError("horizon must be at least 1 arrival");
  }
  if (config.replications < 2) {
    throw ConfigError("need at least 2 replications for a standard error");
  }
  if (!(config.warmup_fraction >= 0.0 && config.warmup_fraction < 1.0)) {
    throw ConfigError("warmup_fraction must lie in [0,1)");
  }
  const size_t n_cps = params.capacities.size();
  if (flows.rates.size() != n_cps || flows.effective_rates.size() != n_cps) {
    throw PreconditionViolation("flows do not match the market dimensions");
  }
  const double lambda = params.total_rate;
  const bool congesting = params.exogenous_mode == ExogenousMode::Congesting;

  std::vector<double> exo_rate(n_cps, 0.0), enqueued(n_cps);
  for (size_t i = 0; i < n_cps; ++i) {
    if (congesting) exo_rate[i] = flows.effective_rates[i] - flows.rates[i];
    enqueued[i] = flows.rates[i] + exo_rate[i];
    if (!(enqueued[i] < params.capacities[i])) {
      throw UnstableQueue("CP " + std::to_string(i + 1) + " offered load " +
                          std::to_string(enqueued[i]) +
                          " at or above its service rate " +
                          std::to_string(params.capacities[i]));
    }
  }

  std::vector<double> route_cdf(n_cps);
  double acc = 0.0;
  for (size_t i = 0; i < n_cps; ++i) {
    acc += flows.rates[i] / lambda;
    route_cdf[i] = acc;
  }

  const std::uint64_t reps = config.replications;
  const std::uint64_t per_rep = std::max<std::uint64_t>(1, config.horizon / reps);
  const std::uint64_t warmup = static_cast<std::uint64_t>(
      config.warmup_fraction * static_cast<double>(per_rep));

  std::vector<std::vector<double>> rep_means(n_cps);
  std::vector<double> rep_overall;
  std::vector<double> sum_sojourn(n_cps, 0.0);
  std::vector<std::uint64_t> count(n_cps, 0);
  double sum_all = 0.0;
  std::uint64_t count_all = 0;

  for (std::uint64_t r = 0; r < reps; ++r) {
    const std::uint64_t rep_seed = splitmix64(config.seed + 0x100000001ULL * r);
    const RepResult res = run_replication(params.capacities, route_cdf,
                                          exo_rate, lambda, per_rep, warmup,
                                          rep_seed);
    for (size_t i = 0; i < n_cps; ++i) {
      if (res.count[i] > 0) {
        rep_means[i].push_back(res.sum_sojourn[i] /
                               static_cast<double>(res.count[i]));
      }
      sum_sojourn[i] += res.sum_sojourn[i];
      count[i] += res.count[i];
    }
    rep_overall.push_back(res.sum_all / static_cast<double>(res.count_all));
    sum_all += res.sum_all;
    count_all += res.count_all;
  }

  SimStats stats;
  stats.service_rate = params.capacities;
  stats.enqueued_rate = enqueued;
  stats.arrivals.resize(n_cps);
  stats.mean_sojourn.resize(n_cps);
  stats.sojourn_stderr.resize(n_cps);
  stats.arrival_fraction.resize(n_cps);
  for (size_t i = 0; i < n_cps; ++i) {
    stats.arrivals[i] = count[i];
    stats.mean_sojourn[i] =
        count[i] ? sum_sojourn[i] / static_cast<double>(count[i]) : 0.0;
    stats.sojourn_stderr[i] = stderr_of_means(rep_means[i]);
    stats.arrival_fraction[i] =
        static_cast<double>(count[i]) / static_cast<double>(count_all);
  }
  stats.overall_mean_delay = sum_all / static_cast<double>(count_all);
  stats.overall_stderr = stderr_of_means(rep_overall);
  return stats;
}

TheoryComparison compare_to_theory(const SimStats& stats,
                                   const EquilibriumFlows& flows,
                                   double z_threshold) {
  TheoryComparison cmp;
  cmp.z_threshold = z_threshold;
  const size_t n = stats.mean_sojourn.size();
  cmp.z_scores.resize(n);
  double theory_overall = 0.0;
  const double total =
      std::accumulate(flows.rates.begin(), flows.rates.end(), 0.0);
  for (size_t i = 0; i < n; ++i) {
    const double theory =
        1.0 / (stats.service_rate[i] - stats.enqueued_rate[i]);
    cmp.z_scores[i] =
        (stats.mean_sojourn[i] - theory) / stats.sojourn_stderr[i];
    theory_overall += flows.rates[i] / total * theory;
  }
  cmp.overall_delay_z =
      (stats.overall_mean_delay - theory_overall) / stats.overall_stderr;
  cmp.passed = std::abs(cmp.overall_delay_z) <= z_threshold;
  for (double z : cmp.z_scores) {
    if (!(std::abs(z) <= z_threshold)) cmp.passed = false;
  }
  return cmp;
}

}  // namespace zerorate
