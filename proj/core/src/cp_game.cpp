#include "zerorate/cp_game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zerorate/errors.hpp"
#include "zerorate/wardrop.hpp"

namespace zerorate {

std::string to_string(const Profile2& profile) {
  const auto letter = [](DiscreteAction a) {
    return a == DiscreteAction::S ? 'S' : 'N';
  };
  return std::string{'(', letter(profile.first), ',', letter(profile.second),
                     ')'};
}

double cp_utility(const MarketParams& params, const SponsorshipProfile& profile,
                  int cp_index) {
  const EquilibriumFlows flows = solve_wardrop(params, profile);
  const double gamma = profile.gammas[static_cast<size_t>(cp_index)];
  const double margin = params.ad_rate -
                        (1.0 - gamma) * params.repayment * params.access_price;
  return margin * flows.effective_rates[static_cast<size_t>(cp_index)];
}

DominanceResult utility_dominance(const MarketParams& params,
                                  const SponsorshipProfile& profile) {
  const double beta_bar =
      params.repayment * params.access_price / params.ad_rate;
  if (beta_bar > 1.0) {
    throw PreconditionViolation("utility_dominance requires rho*c/beta <= 1");
  }
  const EquilibriumFlows flows = solve_wardrop(params, profile);
  const double g1 = profile.gammas[0];
  const double g2 = profile.gammas[1];
  const double ratio =
      (1.0 - (1.0 - g1) * beta_bar) / (1.0 - (1.0 - g2) * beta_bar);
  DominanceResult result;
  result.threshold_rate = flows.total_effective / (ratio + 1.0);
  result.u1_dominates = flows.effective_rates[0] >= result.threshold_rate;
  return result;
}

BestResponse best_response(const MarketParams& params, double opponent_gamma,
                           int cp_index, int grid_size) {
  if (grid_size < 2) {
    throw PreconditionViolation("grid_size must be >= 2");
  }
  BestResponse result;
  std::vector<double> gammas;
  std::vector<double> utilities;
  gammas.reserve(static_cast<size_t>(grid_size));
  utilities.reserve(static_cast<size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    const double g = static_cast<double>(j) / (grid_size - 1);
    SponsorshipProfile profile{{0.0, 0.0}};
    profile.gammas[static_cast<size_t>(cp_index)] = g;
    profile.gammas[static_cast<size_t>(1 - cp_index)] = opponent_gamma;
    try {
      utilities.push_back(cp_utility(params, profile, cp_index));
      gammas.push_back(g);
    } catch (const AssumptionViolation& e) {
      std::ostringstream os;
      os << "gamma=" << g << " infeasible: " << e.what();
      result.notes.push_back(os.str());
    }
  }
  if (utilities.empty()) {
    throw AssumptionViolation("no feasible grid point for best response");
  }
  const double best = *std::max_element(utilities.begin(), utilities.end());
  const double tol = 1e-9 * std::max(1.0, std::abs(best));
  result.max_utility = best;
  for (size_t j = 0; j < utilities.size(); ++j) {
    if (utilities[j] >= best - tol) result.gammas.push_back(gammas[j]);
  }
  return result;
}

BestResponseCurve best_response_curve(const MarketParams& params, int cp_index,
                                      int grid_size) {
  BestResponseCurve curve;
  curve.opponent_gammas.reserve(static_cast<size_t>(grid_size));
  curve.responses.reserve(static_cast<size_t>(grid_size));
  constexpr double kJump = 0.05;
  for (int j = 0; j < grid_size; ++j) {
    const double opp = static_cast<double>(j) / (grid_size - 1);
    BestResponse br = best_response(params, opp, cp_index, grid_size);
    curve.opponent_gammas.push_back(opp);
    curve.responses.push_back(std::move(br.gammas));
    if (j > 0) {
      const double prev = curve.responses[static_cast<size_t>(j) - 1].front();
      const double curr = curve.responses[static_cast<size_t>(j)].front();
      if (std::abs(curr - prev) > kJump) curve.discontinuities.push_back(opp);
    }
  }
  return curve;
}

std::vector<std::pair<double, double>> find_continuous_pne(
    const MarketParams& params, int grid_size) {
  if (grid_size < 2) {
    throw PreconditionViolation("grid_size must be >= 2");
  }
  const size_t g = static_cast<size_t>(grid_size);
  const double lowest = std::numeric_limits<double>::lowest();
  std::vector<double> u1(g * g, lowest), u2(g * g, lowest);
  std::vector<double> grid(g);
  for (size_t j = 0; j < g; ++j) {
    grid[j] = static_cast<double>(j) / (grid_size - 1);
  }
  for (size_t i = 0; i < g; ++i) {
    for (size_t j = 0; j < g; ++j) {
      SponsorshipProfile profile{{grid[i], grid[j]}};
      try {
        const EquilibriumFlows flows = solve_wardrop(params, profile);
        const double rc = params.repayment * params.access_price;
        u1[i * g + j] = (params.ad_rate - (1.0 - grid[i]) * rc) *
                        flows.effective_rates[0];
        u2[i * g + j] = (params.ad_rate - (1.0 - grid[j]) * rc) *
                        flows.effective_rates[1];
      } catch (const AssumptionViolation&) {
        // infeasible point; excluded from the search
      }
    }
  }
  std::vector<double> col_max1(g, lowest), row_max2(g, lowest);
  for (size_t i = 0; i < g; ++i) {
    for (size_t j = 0; j < g; ++j) {
      col_max1[j] = std::max(col_max1[j], u1[i * g + j]);
      row_max2[i] = std::max(row_max2[i], u2[i * g + j]);
    }
  }
  std::vector<std::pair<double, double>> pne;
  for (size_t i = 0; i < g; ++i) {
    for (size_t j = 0; j < g; ++j) {
      if (u1[i * g + j] == lowest) continue;
      const double eps1 = 1e-6 * std::max(1.0, std::abs(col_max1[j]));
      const double eps2 = 1e-6 * std::max(1.0, std::abs(row_max2[i]));
      if (u1[i * g + j] >= col_max1[j] - eps1 &&
          u2[i * g + j] >= row_max2[i] - eps2) {
        pne.emplace_back(grid[i], grid[j]);
      }
    }
  }
  return pne;
}

namespace {

void throw_on_violations(const MarketParams& params) {
  ValidationReport report = validate_assumptions(params);
  if (!report.passed) {
    std::ostringstream os;
    os << "model assumptions violated:";
    for (const auto& [id, msg] : report.violations) {
      os << " [" << id << "] " << msg << ";";
    }
    throw AssumptionViolation(os.str());
  }
}

}  // namespace

GameTable2x2 discrete_game_table(const MarketParams& params) {
  throw_on_violations(params);
  const double m1 = params.capacities[0];
  const double m2 = params.capacities[1];
  const double mbar = params.excess_capacity();
  const double c = params.access_price;
  const double l0 = params.exogenous_rate;
  const bool congesting =
      params.exogenous_mode == ExogenousMode::Congesting && l0 > 0.0;

  GameTable2x2 table;
  table.alpha11 = c + 2.0 / mbar;
  if (congesting) {
    table.alpha00 = 2.0 / (mbar - 2.0 * l0);
    const double mb = mbar - l0;
    table.alpha01 = c / 2.0 + 1.0 / mb + std::sqrt(c * c / 4.0 + 1.0 / (mb * mb));
  } else {
    table.alpha00 = 2.0 / mbar;
    table.alpha01 =
        c / 2.0 + 1.0 / mbar + std::sqrt(c * c / 4.0 + 1.0 / (mbar * mbar));
  }

  // Effective (total) rate of a CP with capacity m playing S or N at the
  // profile's equilibrium cost. A sponsoring CP carries the extra exogenous
  // traffic; in Congesting mode that traffic also consumed capacity, which
  // cancels the +lambda0 term.
  const auto rate_s = [&](double m, double alpha) {
    return congesting ? m - 1.0 / alpha : m + l0 - 1.0 / alpha;
  };
  const auto rate_n = [&](double m, double alpha) {
    return m - 1.0 / (alpha - c);
  };

  const double margin_s = params.ad_rate - params.repayment * c;
  const double margin_n = params.ad_rate;

  table.effective_rates[kSS] = {rate_s(m1, table.alpha00),
                                rate_s(m2, table.alpha00)};
  table.effective_rates[kNN] = {rate_n(m1, table.alpha11),
                                rate_n(m2, table.alpha11)};
  table.effective_rates[kSN] = {rate_s(m1, table.alpha01),
                                rate_n(m2, table.alpha01)};
  table.effective_rates[kNS] = {rate_n(m1, table.alpha01),
                                rate_s(m2, table.alpha01)};

  for (const auto& [profile, rates] : table.effective_rates) {
    const double mg1 =
        profile.first == DiscreteAction::S ? margin_s : margin_n;
    const double mg2 =
        profile.second == DiscreteAction::S ? margin_s : margin_n;
    table.utilities[profile] = {mg1 * rates.first, mg2 * rates.second};
  }
  return table;
}

PneReport classify_pne(const MarketParams& params) {
  if (!(params.access_price > 0.0)) {
    throw PreconditionViolation("PNE classification requires access_price > 0");
  }
  const GameTable2x2 table = discrete_game_table(params);
  const double c = params.access_price;

  // (S,S) holds iff rho/beta <= (X_i - Y_i)/(c*X_i) for both CPs, where X_i
  // is CP i's rate at (S,S) and Y_i its rate after deviating to N.
  const auto stay_s_bound = [&](double at_profile, double after_deviation) {
    return (at_profile - after_deviation) / (c * at_profile);
  };
  // (N,N) holds iff rho/beta >= (Q_i - P_i)/(c*Q_i) for both CPs, where Q_i
  // is CP i's rate after deviating to S and P_i its rate at (N,N).
  const auto stay_n_bound = [&](double at_profile, double after_deviation) {
    return (after_deviation - at_profile) / (c * after_deviation);
  };

  const auto& ss = table.effective_rates.at(kSS);
  const auto& nn = table.effective_rates.at(kNN);
  const auto& sn = table.effective_rates.at(kSN);
  const auto& ns = table.effective_rates.at(kNS);

  PneReport report;
  report.threshold_ss = std::min(stay_s_bound(ss.first, ns.first),
                                 stay_s_bound(ss.second, sn.second));
  report.threshold_nn = std::max(stay_n_bound(nn.first, sn.first),
                                 stay_n_bound(nn.second, ns.second));
  report.rho_over_beta = params.repayment / params.ad_rate;

  if (report.rho_over_beta <= report.threshold_ss) report.pne_set.push_back(kSS);
  // (S,N): CP2 must not switch to S (>= A) and CP1 must not switch to N (<= B).
  const double sn_lower = stay_s_bound(ss.second, sn.second);
  const double sn_upper = stay_n_bound(nn.first, sn.first);
  if (report.rho_over_beta >= sn_lower && report.rho_over_beta <= sn_upper) {
    report.pne_set.push_back(kSN);
  }
  if (report.rho_over_beta >= report.threshold_nn) report.pne_set.push_back(kNN);
  return report;
}

std::vector<Profile2> brute_force_pne(const GameTable2x2& table) {
  constexpr double kGain = 1e-12;
  std::vector<Profile2> pne;
  constexpr std::array<DiscreteAction, 2> actions{DiscreteAction::S,
                                                  DiscreteAction::N};
  for (DiscreteAction a1 : actions) {
    for (DiscreteAction a2 : actions) {
      const Profile2 profile{a1, a2};
      const auto [u1, u2] = table.utilities.at(profile);
      bool stable = true;
      for (DiscreteAction dev : actions) {
        if (dev != a1 &&
            table.utilities.at({dev, a2}).first > u1 + kGain) {
          stable = false;
        }
        if (dev != a2 &&
            table.utilities.at({a1, dev}).second > u2 + kGain) {
          stable = false;
        }
      }
      if (stable) pne.push_back(profile);
    }
  }
  return pne;
}

double rgf(const MarketParams& params, const SponsorshipProfile& profile) {
  if (!(params.total_rate > 0.0)) {
    throw PreconditionViolation("rgf requires total_rate > 0");
  }
  double exo = 0.0;
  for (double g : profile.gammas) exo += params.exogenous_rate * (1.0 - g);
  return 1.0 + exo / params.total_rate;
}

double rgf(const MarketParams& params, const Profile2& profile) {
  return rgf(params, SponsorshipProfile{{gamma_of(profile.first),
                                         gamma_of(profile.second)}});
}

}  // namespace zerorate
