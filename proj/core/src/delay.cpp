#include "zerorate/delay.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zerorate/errors.hpp"
#include "zerorate/wardrop.hpp"

namespace zerorate {

double mean_delay(const MarketParams& params,
                  const SponsorshipProfile& profile) {
  const EquilibriumFlows flows = solve_wardrop(params, profile);
  // For an active CP the sojourn time equals alpha - gamma_i*c regardless of
  // the exogenous mode: in Congesting mode the reduced capacity already
  // accounts for the enqueued exogenous share.
  double delay = 0.0;
  for (size_t i = 0; i < flows.rates.size(); ++i) {
    const double weight = flows.effective_rates[i] / flows.total_effective;
    double sojourn;
    if (flows.rates[i] > 0.0) {
      sojourn = flows.alpha - profile.gammas[i] * params.access_price;
    } else {
      sojourn = 1.0 / params.capacities[i];
    }
    delay += weight * sojourn;
  }
  return delay;
}

double mean_delay_closed_form(const MarketParams& params,
                              const SponsorshipProfile& profile) {
  if (params.num_cps() != 2) {
    throw PreconditionViolation("closed-form delay requires exactly 2 CPs");
  }
  if (params.exogenous_rate > 0.0) {
    throw PreconditionViolation("closed-form delay requires lambda0 = 0");
  }
  const EquilibriumFlows flows = solve_wardrop_two_cp(params, profile);
  const auto& m = params.capacities;
  const double lambda = params.total_rate;
  const double c = params.access_price;
  return flows.alpha / lambda * (m[0] + m[1]) -
         c / lambda * (m[0] * profile.gammas[0] + m[1] * profile.gammas[1]) -
         2.0 / lambda;
}

double neutral_delay(const MarketParams& params) {
  return params.num_cps() / params.excess_capacity();
}

std::optional<double> delay_threshold_price(const MarketParams& params,
                                            double gamma1, double gamma2) {
  if (params.num_cps() != 2) {
    throw PreconditionViolation("delay threshold is defined for 2 CPs");
  }
  ValidationReport report = validate_assumptions(params);
  if (!report.passed) {
    throw AssumptionViolation("invalid market parameters: " +
                              report.violations.front().second);
  }
  if (gamma2 <= gamma1) return std::nullopt;
  const double m1 = params.capacities[0];
  const double m2 = params.capacities[1];
  const double mbar = params.excess_capacity();
  return (m2 / m1 - m1 / m2) / (mbar * (gamma2 - gamma1));
}

DelayCurve delay_vs_price_curve(const MarketParams& params,
                                const SponsorshipProfile& profile,
                                const std::vector<double>& price_grid) {
  for (size_t i = 0; i < price_grid.size(); ++i) {
    if (price_grid[i] < 0.0 ||
        (i > 0 && !(price_grid[i] > price_grid[i - 1]))) {
      throw PreconditionViolation(
          "price grid must be nonnegative and strictly increasing");
    }
  }
  DelayCurve curve;
  curve.prices = price_grid;
  curve.delays.reserve(price_grid.size());
  const double baseline = neutral_delay(params);
  for (double c : price_grid) {
    MarketParams at_price = params;
    at_price.access_price = c;
    try {
      curve.delays.push_back(mean_delay(at_price, profile));
    } catch (const AssumptionViolation& e) {
      std::ostringstream os;
      os << "at price c=" << c << ": " << e.what();
      throw AssumptionViolation(os.str());
    }
  }

  // Bracket the first crossing of the neutral baseline by bisection.
  const auto diff_at = [&](double c) {
    MarketParams at_price = params;
    at_price.access_price = c;
    return mean_delay(at_price, profile) - baseline;
  };
  for (size_t i = 0; i + 1 < curve.prices.size(); ++i) {
    const double d0 = curve.delays[i] - baseline;
    const double d1 = curve.delays[i + 1] - baseline;
    if (d0 == 0.0) {
      curve.threshold_price = curve.prices[i];
      break;
    }
    if (d0 * d1 < 0.0) {
      double lo = curve.prices[i];
      double hi = curve.prices[i + 1];
      double flo = d0;
      for (int iter = 0; iter < 100 && hi - lo > 1e-14 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = diff_at(mid);
        if ((fmid < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      curve.threshold_price = 0.5 * (lo + hi);
      break;
    }
  }
  return curve;
}

std::vector<double> log_spaced_prices(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw PreconditionViolation("log grid requires 0 < lo < hi and points >= 2");
  }
  std::vector<double> grid(static_cast<size_t>(points));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    grid[static_cast<size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (points - 1));
  }
  return grid;
}

}  // namespace zerorate
