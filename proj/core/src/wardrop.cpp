#include "zerorate/wardrop.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "zerorate/errors.hpp"

namespace zerorate {

namespace {

void require_profile_matches(const MarketParams& params,
                             const SponsorshipProfile& profile) {
  if (static_cast<int>(profile.gammas.size()) != params.num_cps()) {
    throw PreconditionViolation("profile length " +
                                std::to_string(profile.gammas.size()) +
                                " does not match CP count " +
                                std::to_string(params.num_cps()));
  }
  for (double g : profile.gammas) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw PreconditionViolation("subsidy factors must lie in [0,1]");
    }
  }
}

void throw_on_violations(const ValidationReport& report) {
  if (report.passed) return;
  std::ostringstream os;
  os << "model assumptions violated:";
  for (const auto& [id, msg] : report.violations) {
    os << " [" << id << "] " << msg << ";";
  }
  throw AssumptionViolation(os.str());
}

/// Capacities the Wardrop split actually runs on: reduced by the exogenous
/// shares in Congesting mode, unchanged otherwise.
std::vector<double> solver_capacities(const MarketParams& params,
                                      const SponsorshipProfile& profile) {
  std::vector<double> caps = params.capacities;
  if (params.exogenous_mode == ExogenousMode::Congesting &&
      params.exogenous_rate > 0.0) {
    for (size_t i = 0; i < caps.size(); ++i) {
      caps[i] -= params.exogenous_rate * (1.0 - profile.gammas[i]);
    }
  }
  return caps;
}

void fill_effective(const MarketParams& params,
                    const SponsorshipProfile& profile,
                    EquilibriumFlows& flows) {
  flows.effective_rates = flows.rates;
  flows.total_effective = params.total_rate;
  for (size_t i = 0; i < flows.rates.size(); ++i) {
    const double exo = params.exogenous_rate * (1.0 - profile.gammas[i]);
    flows.effective_rates[i] += exo;
    flows.total_effective += exo;
  }
}

}  // namespace

EquilibriumFlows solve_wardrop_two_cp(const MarketParams& params,
                                      const SponsorshipProfile& profile) {
  require_profile_matches(params, profile);
  if (params.num_cps() != 2) {
    throw PreconditionViolation("closed-form solver requires exactly 2 CPs");
  }
  throw_on_violations(validate_assumptions(params));

  const std::vector<double> caps = solver_capacities(params, profile);
  const double mbar = caps[0] + caps[1] - params.total_rate;
  if (!(mbar > 0.0)) {
    throw AssumptionViolation(
        "excess capacity is non-positive after exogenous reduction");
  }
  const double c = params.access_price;
  const double g1 = profile.gammas[0];
  const double g2 = profile.gammas[1];

  // Larger quadratic root; the smaller one is infeasible.
  const double half_gap = c * (g1 - g2) / 2.0;
  const double alpha = c * (g1 + g2) / 2.0 + 1.0 / mbar +
                       std::sqrt(half_gap * half_gap + 1.0 / (mbar * mbar));
  assert(alpha > std::max(g1, g2) * c);

  EquilibriumFlows flows;
  flows.alpha = alpha;
  flows.rates = {caps[0] - 1.0 / (alpha - g1 * c),
                 caps[1] - 1.0 / (alpha - g2 * c)};
  fill_effective(params, profile, flows);
  return flows;
}

EquilibriumFlows solve_wardrop_n_cp(const MarketParams& params,
                                    const SponsorshipProfile& profile) {
  require_profile_matches(params, profile);
  const std::vector<double> caps = solver_capacities(params, profile);
  const double lambda = params.total_rate;
  const double total_capacity =
      std::accumulate(caps.begin(), caps.end(), 0.0);
  if (!(total_capacity > lambda)) {
    throw AssumptionViolation("total capacity " +
                              std::to_string(total_capacity) +
                              " does not exceed total rate (A1)");
  }
  if (!(lambda > 0.0)) {
    throw PreconditionViolation("total_rate must be > 0");
  }
  const double c = params.access_price;
  const size_t n = caps.size();

  // Supplied flow at cost level alpha; each active term is increasing in
  // alpha, inactive CPs (1/m_i + gamma_i*c >= alpha) contribute zero.
  const auto supplied = [&](double alpha) {
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double denom = alpha - profile.gammas[i] * c;
      if (denom <= 0.0) continue;
      total += std::max(0.0, caps[i] - 1.0 / denom);
    }
    return total;
  };

  // At lo every CP is exactly at zero flow, so supplied(lo) = 0 < lambda.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (!(caps[i] > 0.0)) {
      throw AssumptionViolation("CP capacity non-positive after exogenous reduction");
    }
    const double idle_cost = profile.gammas[i] * c + 1.0 / caps[i];
    lo = std::min(lo, idle_cost);
    hi = std::max(hi, idle_cost);
  }
  double step = std::max(1.0 / (total_capacity - lambda), 1e-6);
  while (supplied(hi) < lambda) {
    hi += step;
    step *= 2.0;
  }

  // Residual floor: 1e-12 absolute, guarded by the roundoff of summing
  // flows of magnitude ~lambda.
  const double tol = std::max(
      1e-12, 4.0 * std::numeric_limits<double>::epsilon() * lambda);
  const int max_iter = 200;
  double alpha = 0.5 * (lo + hi);
  double residual = supplied(alpha) - lambda;
  for (int iter = 0; iter < max_iter && std::abs(residual) > tol; ++iter) {
    if (residual > 0.0) {
      hi = alpha;
    } else {
      lo = alpha;
    }
    alpha = 0.5 * (lo + hi);
    residual = supplied(alpha) - lambda;
    if (hi - lo <= std::numeric_limits<double>::epsilon() * alpha) break;
  }
  if (std::abs(residual) > std::max(tol, 1e-9 * lambda)) {
    throw NoConvergence("bisection residual " + std::to_string(residual) +
                        " above tolerance");
  }

  EquilibriumFlows flows;
  flows.alpha = alpha;
  flows.rates.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double denom = alpha - profile.gammas[i] * c;
    flows.rates[i] =
        denom > 0.0 ? std::max(0.0, caps[i] - 1.0 / denom) : 0.0;
  }
  fill_effective(params, profile, flows);
  return flows;
}

EquilibriumFlows solve_wardrop(const MarketParams& params,
                               const SponsorshipProfile& profile) {
  if (params.num_cps() == 2) return solve_wardrop_two_cp(params, profile);
  return solve_wardrop_n_cp(params, profile);
}

}  // namespace zerorate
