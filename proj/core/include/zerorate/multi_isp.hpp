#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zerorate/market.hpp"

namespace zerorate {

/// Two-ISP market. ISP1 must be the cheaper one (c1 < c2) and the CPs share
/// a single ad rate beta.
struct DuopolyParams {
  std::vector<double> capacities;  // m_1 < m_2, as in the single-ISP model
  double total_rate = 0.0;         // lambda
  double price_isp1 = 0.0;         // c1
  double price_isp2 = 0.0;         // c2, must exceed c1
  double repayment = 1.0;          // rho
  double ad_rate = 1.0;            // beta, common to both CPs
  double exogenous_rate = 0.0;     // lambda0

  double excess_capacity() const {
    return capacities[0] + capacities[1] - total_rate;
  }
};

/// A CP's stance toward the two ISPs. SN sponsors ISP1 only, NS sponsors
/// ISP2 only, NN sponsors neither. Sponsoring both is ruled out: a CP
/// contracts with at most one ISP.
enum class MultiAction { SN, NS, NN };

using ProfileMulti = std::pair<MultiAction, MultiAction>;

std::string to_string(MultiAction a);
std::string to_string(const ProfileMulti& profile);

/// Equilibrium routing for one action profile. flows[i][j] is the total
/// traffic (usual plus exogenous) from ISP i+1 to CP j+1.
struct DuopolyFlows {
  std::array<std::array<double, 2>, 2> flows{{{0.0, 0.0}, {0.0, 0.0}}};
  double alpha = 0.0;
  std::pair<double, double> rgf{1.0, 1.0};  // +infinity when an ISP carries
                                            // exogenous traffic on zero usual flow
};

struct GameTable3x3 {
  std::map<ProfileMulti, std::pair<double, double>> utilities;
};

struct PneReportMulti {
  double threshold_snsn = 0.0;  // (SN,SN) is a PNE iff rho/beta <= this
  double threshold_nnnn = 0.0;  // (NN,NN) is a PNE iff rho/beta >= this
  double rho_over_beta = 0.0;
  std::vector<ProfileMulti> pne_set;  // subset of {(SN,SN),(SN,NN),(NN,NN)}
};

ValidationReport validate_duopoly(const DuopolyParams& params);

/// Closed-form equilibrium routing and per-ISP revenue gain for one of the
/// nine action profiles. Users route each CP's traffic through the ISP with
/// the lower effective price gamma_ij * c_i; ties split equally.
DuopolyFlows route_flows(const DuopolyParams& params,
                         const ProfileMulti& profile);

/// All nine utility pairs, U_j = sum_i (beta - rho*(1-gamma_ij)*c_i) *
/// total_flow_ij.
GameTable3x3 discrete_game_table_multi(const DuopolyParams& params);

/// Threshold classification of the 3x3 game; only (SN,SN), (NN,NN) and
/// (SN,NN) can ever be pure Nash equilibria when c1 < c2.
PneReportMulti classify_pne_multi(const DuopolyParams& params);

/// Independent 3x3 Nash oracle (strict improvement beyond 1e-12).
std::vector<ProfileMulti> brute_force_pne_multi(const GameTable3x3& table);

}  // namespace zerorate
