#include "zerorate/market.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace zerorate {

double MarketParams::excess_capacity() const {
  return std::accumulate(capacities.begin(), capacities.end(), 0.0) -
         total_rate;
}

namespace {

void add_violation(ValidationReport& report, const std::string& id,
                   const std::string& message) {
  report.passed = false;
  report.violations.emplace_back(id, message);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate_assumptions(const MarketParams& params) {
  ValidationReport report;
  const auto& m = params.capacities;
  const double lambda = params.total_rate;
  const int n = params.num_cps();

  if (n < 2) {
    add_violation(report, "N", "at least two CPs are required, got " +
                                   std::to_string(n));
    return report;
  }

  if (!(lambda > 0.0)) {
    add_violation(report, "positivity", "total_rate must be > 0, got " + fmt(lambda));
  }
  if (params.access_price < 0.0) {
    add_violation(report, "positivity",
                  "access_price must be >= 0, got " + fmt(params.access_price));
  }
  if (!(params.repayment > 0.0 && params.repayment <= 1.0)) {
    add_violation(report, "positivity",
                  "repayment must be in (0,1], got " + fmt(params.repayment));
  }
  if (!(params.ad_rate > 0.0)) {
    add_violation(report, "positivity",
                  "ad_rate must be > 0, got " + fmt(params.ad_rate));
  }
  if (params.exogenous_rate < 0.0) {
    add_violation(report, "positivity", "exogenous_rate must be >= 0, got " +
                                            fmt(params.exogenous_rate));
  }
  for (int i = 0; i < n; ++i) {
    if (!(m[static_cast<size_t>(i)] > 0.0)) {
      add_violation(report, "positivity",
                    "capacity m_" + std::to_string(i + 1) + " must be > 0");
    }
  }

  const double total_capacity =
      std::accumulate(m.begin(), m.end(), 0.0);
  if (!(total_capacity > lambda)) {
    add_violation(report, "A1",
                  "total capacity " + fmt(total_capacity) +
                      " does not exceed total rate " + fmt(lambda));
  }
  for (int i = 0; i < n; ++i) {
    if (!(m[static_cast<size_t>(i)] < lambda)) {
      add_violation(report, "A2", "capacity m_" + std::to_string(i + 1) + "=" +
                                      fmt(m[static_cast<size_t>(i)]) +
                                      " is not below total rate " + fmt(lambda));
    }
  }
  if (!(m[0] < m[1])) {
    add_violation(report, "A3", "m_1=" + fmt(m[0]) +
                                    " must be strictly below m_2=" + fmt(m[1]));
  }
  for (int i = 1; i + 1 < n; ++i) {
    if (m[static_cast<size_t>(i)] > m[static_cast<size_t>(i) + 1]) {
      add_violation(report, "A3",
                    "capacities must be nondecreasing from m_2 on; m_" +
                        std::to_string(i + 1) + " > m_" + std::to_string(i + 2));
    }
  }
  // For N=2 the congestion condition A2 already forces both CPs active, so
  // the lambda/N floor only binds for three or more CPs.
  if (n >= 3 && !(m[0] > lambda / n)) {
    add_violation(report, "A3", "m_1=" + fmt(m[0]) + " must exceed lambda/N=" +
                                    fmt(lambda / n));
  }

  if (params.exogenous_rate > 0.0) {
    const double mbar = total_capacity - lambda;
    if (!(mbar > 2.0 * params.exogenous_rate)) {
      add_violation(report, "exogenous",
                    "excess capacity " + fmt(mbar) +
                        " must exceed twice the exogenous rate " +
                        fmt(2.0 * params.exogenous_rate));
    }
    for (int i = 0; i < n; ++i) {
      if (!(m[static_cast<size_t>(i)] > params.exogenous_rate)) {
        add_violation(report, "exogenous",
                      "capacity m_" + std::to_string(i + 1) +
                          " must exceed the exogenous rate " +
                          fmt(params.exogenous_rate));
      }
    }
  }

  return report;
}

double user_cost(double x, double m, double c, double gamma) {
  if (!(m > x)) return kInfiniteCost;
  return 1.0 / (m - x) + gamma * c;
}

}  // namespace zerorate
