#pragma once

#include <cstdint>
#include <vector>

#include "zerorate/market.hpp"

namespace zerorate {

struct SimConfig {
  std::uint64_t horizon = 1'000'000;  // usual arrivals, split across replications
  std::uint64_t seed = 0;
  std::uint64_t replications = 32;    // independent runs; SE is across them
  double warmup_fraction = 0.1;       // arrivals discarded per replication
};

/// Post-warmup sojourn statistics per CP plus the overall mean delay.
///
/// Each replication starts its queues at the stationary occupancy, so the
/// counted sojourns are unbiased, and the standard error across replication
/// means is exact even for heavily loaded (long-memory) queues.
struct SimStats {
  std::vector<std::uint64_t> arrivals;      // post-warmup count per CP
  std::vector<double> mean_sojourn;
  std::vector<double> sojourn_stderr;
  std::vector<double> arrival_fraction;     // of the usual stream
  std::vector<double> enqueued_rate;        // analytic offered load per queue
  std::vector<double> service_rate;
  double overall_mean_delay = 0.0;
  double overall_stderr = 0.0;
};

struct TheoryComparison {
  std::vector<double> z_scores;       // per-CP empirical vs 1/(m - load)
  double overall_delay_z = 0.0;
  double z_threshold = 3.0;
  bool passed = false;
};

/// Simulates Poisson(lambda) request arrivals routed independently to CP i
/// with probability rate_i/lambda, each CP an exponential-service FIFO
/// queue. Deterministic for a given seed (mt19937_64; per-CP service
/// streams derived from the seed by splitmix64). Exogenous traffic is an
/// independent Poisson stream per CP at rate lambda0*(1-gamma_i), enqueued
/// only in Congesting mode.
SimStats simulate(const MarketParams& params, const EquilibriumFlows& flows,
                  const SimConfig& config);

/// Per-CP z-scores of the empirical sojourns against 1/(m_i - load_i) and of
/// the overall delay against the analytic mean delay.
TheoryComparison compare_to_theory(const SimStats& stats,
                                   const EquilibriumFlows& flows,
                                   double z_threshold = 3.0);

}  // namespace zerorate
