#pragma once

#include "zerorate/market.hpp"

namespace zerorate {

/// Closed-form Wardrop split for exactly two CPs.
///
/// The equilibrium cost is the larger root of the flow-conservation
/// quadratic,
///   alpha = c*(g1+g2)/2 + 1/mbar + sqrt((c*(g1-g2))^2/4 + 1/mbar^2),
/// and the per-CP rates are m_i - 1/(alpha - gamma_i*c). In Congesting mode
/// the capacities are first reduced by the exogenous shares.
///
/// Throws AssumptionViolation when validate_assumptions fails.
EquilibriumFlows solve_wardrop_two_cp(const MarketParams& params,
                                      const SponsorshipProfile& profile);

/// General N-CP Wardrop solver: bisection on the equilibrium cost alpha of
/// the monotone supplied-flow residual
///   sum_i max(0, m_i - 1/(alpha - gamma_i*c)) - lambda.
/// Zero flows are allowed (water-filling complementarity), so only A1 is
/// required. Throws AssumptionViolation when total capacity <= lambda,
/// NoConvergence if the residual tolerance is not met.
EquilibriumFlows solve_wardrop_n_cp(const MarketParams& params,
                                    const SponsorshipProfile& profile);

/// Dispatches to the closed form for N=2 and bisection otherwise.
EquilibriumFlows solve_wardrop(const MarketParams& params,
                               const SponsorshipProfile& profile);

}  // namespace zerorate
