#include "zerorate/multi_isp.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "zerorate/errors.hpp"

namespace zerorate {

std::string to_string(MultiAction a) {
  switch (a) {
    case MultiAction::SN: return "SN";
    case MultiAction::NS: return "NS";
    case MultiAction::NN: return "NN";
  }
  return "?";
}

std::string to_string(const ProfileMulti& profile) {
  return "(" + to_string(profile.first) + "," + to_string(profile.second) + ")";
}

ValidationReport validate_duopoly(const DuopolyParams& params) {
  ValidationReport report;
  auto fail = [&report](const std::string& id, const std::string& msg) {
    report.passed = false;
    report.violations.emplace_back(id, msg);
  };

  if (params.capacities.size() != 2) {
    fail("shape", "the duopoly model has exactly two CPs");
    return report;
  }
  const double m1 = params.capacities[0];
  const double m2 = params.capacities[1];
  const double lambda = params.total_rate;
  const double l0 = params.exogenous_rate;

  if (!(lambda > 0.0)) fail("positivity", "total rate must be positive");
  if (!(m1 > 0.0 && m2 > 0.0)) fail("positivity", "capacities must be positive");
  if (params.price_isp1 < 0.0 || !(params.price_isp1 < params.price_isp2)) {
    fail("prices", "access prices must satisfy 0 <= c1 < c2");
  }
  if (!(params.repayment > 0.0 && params.repayment <= 1.0)) {
    fail("positivity", "repayment fraction must lie in (0,1]");
  }
  if (!(params.ad_rate > 0.0)) fail("positivity", "ad rate must be positive");
  if (l0 < 0.0) fail("positivity", "exogenous rate must be nonnegative");

  if (!(m1 + m2 > lambda)) {
    fail("A1", "total capacity must exceed the total rate");
  }
  if (!(m1 < m2)) fail("A3", "capacities must be strictly increasing");
  // m2 <= lambda keeps every CP active in all nine routing cases (a CP with
  // zero flow would leave more demand than the other CP can carry).
  if (!(m1 <= lambda && m2 <= lambda)) {
    fail("A2", "every capacity must be at most the total rate");
  }
  if (l0 > 0.0) {
    if (!(m1 + m2 - lambda > 2.0 * l0)) {
      fail("exogenous", "excess capacity must exceed twice the exogenous rate");
    }
    if (!(m1 > l0 && m2 > l0)) {
      fail("exogenous", "every capacity must exceed the exogenous rate");
    }
  }
  return report;
}

namespace {

void require_valid(const DuopolyParams& params) {
  ValidationReport report = validate_duopoly(params);
  if (!report.passed) {
    std::ostringstream os;
    os << "invalid duopoly parameters:";
    for (const auto& [id, msg] : report.violations) {
      os << " [" << id << "] " << msg << ";";
    }
    throw AssumptionViolation(os.str());
  }
}

/// gamma_ij for ISP i under CP action a.
double gamma_for(MultiAction a, int isp) {
  switch (a) {
    case MultiAction::SN: return isp == 0 ? 0.0 : 1.0;
    case MultiAction::NS: return isp == 0 ? 1.0 : 0.0;
    case MultiAction::NN: return 1.0;
  }
  return 1.0;
}

/// 1 + exo/denominator with the zero-usual-flow guard.
double rgf_term(double exo, double denom) {
  if (exo <= 0.0) return 1.0;
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 + exo / denom;
}

}  // namespace

DuopolyFlows route_flows(const DuopolyParams& params,
                         const ProfileMulti& profile) {
  require_valid(params);
  const double m1 = params.capacities[0];
  const double m2 = params.capacities[1];
  const double mbar = params.excess_capacity();
  const double c1 = params.price_isp1;
  const double lambda = params.total_rate;
  const double l0 = params.exogenous_rate;

  // Equilibrium cost when one CP routes at effective price 0 and the other
  // at c1; same quadratic as the single-ISP (S,N) profile.
  const double alpha_mixed =
      c1 / 2.0 + 1.0 / mbar + std::sqrt(c1 * c1 / 4.0 + 1.0 / (mbar * mbar));

  DuopolyFlows out;
  auto& f = out.flows;
  const MultiAction a1 = profile.first;
  const MultiAction a2 = profile.second;

  if (a1 == MultiAction::SN && a2 == MultiAction::SN) {
    out.alpha = 2.0 / mbar;
    f[0][0] = m1 - mbar / 2.0 + l0;
    f[0][1] = m2 - mbar / 2.0 + l0;
    out.rgf = {rgf_term(2.0 * l0, lambda), 1.0};
  } else if (a1 == MultiAction::SN && a2 == MultiAction::NS) {
    out.alpha = 2.0 / mbar;
    f[0][0] = m1 - mbar / 2.0 + l0;
    f[1][1] = m2 - mbar / 2.0 + l0;
    out.rgf = {rgf_term(l0, f[0][0]), rgf_term(l0, f[1][1])};
  } else if (a1 == MultiAction::SN && a2 == MultiAction::NN) {
    out.alpha = alpha_mixed;
    f[0][0] = m1 - 1.0 / out.alpha + l0;
    f[0][1] = m2 - 1.0 / (out.alpha - c1);
    out.rgf = {rgf_term(l0, lambda), 1.0};
  } else if (a1 == MultiAction::NS && a2 == MultiAction::SN) {
    out.alpha = 2.0 / mbar;
    f[1][0] = m1 - mbar / 2.0 + l0;
    f[0][1] = m2 - mbar / 2.0 + l0;
    out.rgf = {rgf_term(l0, f[0][1]), rgf_term(l0, f[1][0])};
  } else if (a1 == MultiAction::NS && a2 == MultiAction::NS) {
    out.alpha = 2.0 / mbar;
    f[1][0] = m1 - mbar / 2.0 + l0;
    f[1][1] = m2 - mbar / 2.0 + l0;
    out.rgf = {1.0, rgf_term(2.0 * l0, lambda)};
  } else if (a1 == MultiAction::NS && a2 == MultiAction::NN) {
    out.alpha = alpha_mixed;
    f[1][0] = m1 - 1.0 / out.alpha + l0;
    f[0][1] = m2 - 1.0 / (out.alpha - c1);
    out.rgf = {1.0, rgf_term(l0, f[1][0])};
  } else if (a1 == MultiAction::NN && a2 == MultiAction::SN) {
    out.alpha = alpha_mixed;
    f[0][0] = m1 - 1.0 / (out.alpha - c1);
    f[0][1] = m2 - 1.0 / out.alpha + l0;
    out.rgf = {rgf_term(l0, lambda), 1.0};
  } else if (a1 == MultiAction::NN && a2 == MultiAction::NS) {
    out.alpha = alpha_mixed;
    f[0][0] = m1 - 1.0 / (out.alpha - c1);
    f[1][1] = m2 - 1.0 / out.alpha + l0;
    out.rgf = {1.0, rgf_term(l0, f[1][1])};
  } else {  // (NN,NN): all traffic pays c1, cheaper ISP1 wins it all
    out.alpha = c1 + 2.0 / mbar;
    f[0][0] = m1 - mbar / 2.0;
    f[0][1] = m2 - mbar / 2.0;
    out.rgf = {1.0, 1.0};
  }
  return out;
}

GameTable3x3 discrete_game_table_multi(const DuopolyParams& params) {
  require_valid(params);
  const std::array<MultiAction, 3> actions{MultiAction::SN, MultiAction::NS,
                                           MultiAction::NN};
  const std::array<double, 2> prices{params.price_isp1, params.price_isp2};
  GameTable3x3 table;
  for (MultiAction a1 : actions) {
    for (MultiAction a2 : actions) {
      const ProfileMulti profile{a1, a2};
      const DuopolyFlows flows = route_flows(params, profile);
      double u1 = 0.0, u2 = 0.0;
      for (int isp = 0; isp < 2; ++isp) {
        const double mg1 =
            params.ad_rate -
            params.repayment * (1.0 - gamma_for(a1, isp)) * prices[isp];
        const double mg2 =
            params.ad_rate -
            params.repayment * (1.0 - gamma_for(a2, isp)) * prices[isp];
        u1 += mg1 * flows.flows[static_cast<size_t>(isp)][0];
        u2 += mg2 * flows.flows[static_cast<size_t>(isp)][1];
      }
      table.utilities[profile] = {u1, u2};
    }
  }
  return table;
}

PneReportMulti classify_pne_multi(const DuopolyParams& params) {
  if (!(params.price_isp1 > 0.0 && params.price_isp1 < params.price_isp2)) {
    throw PreconditionViolation("classification requires 0 < c1 < c2");
  }
  require_valid(params);
  const double m1 = params.capacities[0];
  const double m2 = params.capacities[1];
  const double mbar = params.excess_capacity();
  const double c1 = params.price_isp1;
  const double l0 = params.exogenous_rate;
  const double alpha =
      c1 / 2.0 + 1.0 / mbar + std::sqrt(c1 * c1 / 4.0 + 1.0 / (mbar * mbar));

  PneReportMulti report;
  report.threshold_snsn = (1.0 / (alpha - c1) - mbar / 2.0 + l0) /
                          (c1 * (m2 - mbar / 2.0 + l0));
  report.threshold_nnnn =
      (mbar / 2.0 - 1.0 / alpha + l0) / (c1 * (m1 - 1.0 / alpha + l0));
  report.rho_over_beta = params.repayment / params.ad_rate;

  const double r = report.rho_over_beta;
  if (r <= report.threshold_snsn) {
    report.pne_set.push_back({MultiAction::SN, MultiAction::SN});
  }
  if (r >= report.threshold_snsn && r <= report.threshold_nnnn) {
    report.pne_set.push_back({MultiAction::SN, MultiAction::NN});
  }
  if (r >= report.threshold_nnnn) {
    report.pne_set.push_back({MultiAction::NN, MultiAction::NN});
  }
  return report;
}

std::vector<ProfileMulti> brute_force_pne_multi(const GameTable3x3& table) {
  constexpr double kGain = 1e-12;
  const std::array<MultiAction, 3> actions{MultiAction::SN, MultiAction::NS,
                                           MultiAction::NN};
  std::vector<ProfileMulti> pne;
  for (MultiAction a1 : actions) {
    for (MultiAction a2 : actions) {
      const auto [u1, u2] = table.utilities.at({a1, a2});
      bool stable = true;
      for (MultiAction dev : actions) {
        if (dev != a1 && table.utilities.at({dev, a2}).first > u1 + kGain) {
          stable = false;
        }
        if (dev != a2 && table.utilities.at({a1, dev}).second > u2 + kGain) {
          stable = false;
        }
      }
      if (stable) pne.push_back({a1, a2});
    }
  }
  return pne;
}

}  // namespace zerorate
