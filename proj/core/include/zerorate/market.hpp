#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace zerorate {

/// How exogenous (sponsorship-attracted) traffic interacts with the queues.
///
/// NonCongesting: the usual traffic is split on the original capacities and
/// the exogenous share lambda0*(1-gamma_i) is added on top of the split.
/// Congesting: capacities are reduced to m_i - lambda0*(1-gamma_i) before
/// solving, so the exogenous traffic consumes service capacity.
enum class ExogenousMode { NonCongesting, Congesting };

/// One ISP market: CP service capacities, total request rate, access price
/// and the revenue-side coefficients. Rates are requests per unit time,
/// prices money per unit traffic.
struct MarketParams {
  std::vector<double> capacities;  // m_i, ascending, size N >= 2
  double total_rate = 0.0;         // lambda
  double access_price = 0.0;       // c
  double repayment = 1.0;          // rho in (0,1]
  double ad_rate = 1.0;            // beta > 0
  double exogenous_rate = 0.0;     // lambda0 >= 0
  ExogenousMode exogenous_mode = ExogenousMode::NonCongesting;

  int num_cps() const { return static_cast<int>(capacities.size()); }

  /// Excess service capacity, sum(m_i) - lambda.
  double excess_capacity() const;
};

/// Per-CP subsidy factors gamma_i in [0,1]. gamma=0 is full sponsorship (S),
/// gamma=1 no sponsorship (N).
struct SponsorshipProfile {
  std::vector<double> gammas;

  static SponsorshipProfile uniform(int n, double gamma) {
    return SponsorshipProfile{std::vector<double>(static_cast<size_t>(n), gamma)};
  }
};

/// Wardrop equilibrium split of the usual traffic plus the exogenous shares.
struct EquilibriumFlows {
  std::vector<double> rates;            // lambda_i*, sums to lambda
  double alpha = 0.0;                   // common equilibrium cost
  std::vector<double> effective_rates;  // lambda_i* + lambda0*(1-gamma_i)
  double total_effective = 0.0;         // lambda + sum lambda0*(1-gamma_i)
};

struct ValidationReport {
  bool passed = true;
  std::vector<std::pair<std::string, std::string>> violations;  // (id, message)
};

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// Checks A1-A3, the positivity constraints and, when lambda0 > 0, the
/// exogenous-capacity conditions. Reports every violation; never throws.
ValidationReport validate_assumptions(const MarketParams& params);

/// Cost of a user served at a CP with service rate m and offered load x:
/// 1/(m-x) + gamma*c when m > x, +infinity otherwise.
double user_cost(double x, double m, double c, double gamma);

}  // namespace zerorate
