#pragma once

#include <optional>
#include <vector>

#include "zerorate/market.hpp"

namespace zerorate {

/// Mean delay sampled over a price grid, with the crossing of the neutral
/// baseline N/mbar located when one exists.
struct DelayCurve {
  std::vector<double> prices;
  std::vector<double> delays;
  std::optional<double> threshold_price;
};

/// Mean delay of a typical user at the Wardrop split:
///   sum_i (rate_i / total) * sojourn_i.
/// With exogenous traffic the effective rates and effective total are used.
double mean_delay(const MarketParams& params, const SponsorshipProfile& profile);

/// Two-CP closed form (alpha/lambda)*sum(m_i) - (c/lambda)*sum(m_i*gamma_i)
/// - 2/lambda. Requires N=2 and lambda0=0; agrees with mean_delay to
/// rounding.
double mean_delay_closed_form(const MarketParams& params,
                              const SponsorshipProfile& profile);

/// Neutral-regime baseline N/mbar (2/mbar for two CPs).
double neutral_delay(const MarketParams& params);

/// Access price above which the asymmetric profile (gamma1, gamma2) delays
/// users more than the neutral regime:
///   c* = (m2/m1 - m1/m2) / (mbar * (gamma2 - gamma1))   when gamma2 > gamma1.
/// Returns nullopt for gamma2 <= gamma1 (the delay never drops below the
/// baseline in that case).
std::optional<double> delay_threshold_price(const MarketParams& params,
                                            double gamma1, double gamma2);

/// Evaluates mean_delay over a strictly increasing price grid and brackets
/// the neutral-baseline crossing when one occurs.
DelayCurve delay_vs_price_curve(const MarketParams& params,
                                const SponsorshipProfile& profile,
                                const std::vector<double>& price_grid);

/// Default grid for delay sweeps: log-spaced points over [lo, hi].
std::vector<double> log_spaced_prices(double lo = 1e-4, double hi = 10.0,
                                      int points = 200);

}  // namespace zerorate
