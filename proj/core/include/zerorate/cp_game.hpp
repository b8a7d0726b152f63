#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zerorate/market.hpp"

namespace zerorate {

/// Discrete sponsorship action: S fully sponsors (gamma=0), N does not
/// (gamma=1).
enum class DiscreteAction { S, N };

inline double gamma_of(DiscreteAction a) {
  return a == DiscreteAction::S ? 0.0 : 1.0;
}

using Profile2 = std::pair<DiscreteAction, DiscreteAction>;

inline constexpr Profile2 kSS{DiscreteAction::S, DiscreteAction::S};
inline constexpr Profile2 kNN{DiscreteAction::N, DiscreteAction::N};
inline constexpr Profile2 kSN{DiscreteAction::S, DiscreteAction::N};
inline constexpr Profile2 kNS{DiscreteAction::N, DiscreteAction::S};

std::string to_string(const Profile2& profile);

/// The 2x2 sponsorship matrix game: per-profile CP utilities and the
/// associated equilibrium costs alpha_00, alpha_11, alpha_01 = alpha_10.
struct GameTable2x2 {
  std::map<Profile2, std::pair<double, double>> utilities;
  double alpha00 = 0.0;
  double alpha11 = 0.0;
  double alpha01 = 0.0;  // equals alpha10

  /// Per-CP total (effective) rate at each profile, used by the threshold
  /// classification.
  std::map<Profile2, std::pair<double, double>> effective_rates;
};

/// Pure-Nash classification of the 2x2 game by the rho/beta thresholds.
struct PneReport {
  double threshold_ss = 0.0;      // A: (S,S) is a PNE iff rho/beta <= A
  double threshold_nn = 0.0;      // B: (N,N) is a PNE iff rho/beta >= B
  double rho_over_beta = 0.0;
  std::vector<Profile2> pne_set;  // subset of {SS, NN, SN}; never NS
};

/// Best responses of one CP over a grid of its own subsidy factor.
struct BestResponse {
  std::vector<double> gammas;  // all grid maximizers within tolerance
  double max_utility = 0.0;
  std::vector<std::string> notes;  // grid points skipped as infeasible
};

struct BestResponseCurve {
  std::vector<double> opponent_gammas;
  std::vector<std::vector<double>> responses;
  std::vector<double> discontinuities;  // opponent gammas where the response jumps
};

/// Utility of CP i at the Wardrop split:
///   (beta - (1-gamma_i)*rho*c) * lambda_i*      (lambda0 = 0)
///   (beta - (1-gamma_i)*rho*c) * lambda~_i*     (lambda0 > 0)
double cp_utility(const MarketParams& params, const SponsorshipProfile& profile,
                  int cp_index);

struct DominanceResult {
  bool u1_dominates = false;
  double threshold_rate = 0.0;  // rate CP1 must reach for U1 >= U2
};

/// Whether the low-capacity CP out-earns the high-capacity one, via the
/// rate threshold lambda / (ratio + 1). Requires rho*c/beta <= 1.
DominanceResult utility_dominance(const MarketParams& params,
                                  const SponsorshipProfile& profile);

/// Grid-maximizes U_i(., opponent_gamma) over [0,1] and returns every grid
/// point within relative tolerance 1e-9 of the maximum.
BestResponse best_response(const MarketParams& params, double opponent_gamma,
                           int cp_index, int grid_size);

/// Best responses across a grid of opponent subsidy factors, with jump
/// locations flagged.
BestResponseCurve best_response_curve(const MarketParams& params, int cp_index,
                                      int grid_size);

/// All grid profiles (gamma1, gamma2) that are mutual epsilon-best responses
/// (epsilon = 1e-6 * |U|). May be empty: the continuous game often has no
/// equilibrium at all.
std::vector<std::pair<double, double>> find_continuous_pne(
    const MarketParams& params, int grid_size);

/// Closed-form 2x2 game table for the chosen exogenous mode.
GameTable2x2 discrete_game_table(const MarketParams& params);

/// Threshold classification of the pure Nash equilibria (never contains
/// (N,S)). Requires access_price > 0.
PneReport classify_pne(const MarketParams& params);

/// Independent Nash oracle: a profile is a PNE iff neither player improves
/// strictly (beyond 1e-12) by unilateral deviation.
std::vector<Profile2> brute_force_pne(const GameTable2x2& table);

/// Revenue gain factor 1 + lambda0*((1-gamma1)+(1-gamma2))/lambda.
double rgf(const MarketParams& params, const SponsorshipProfile& profile);
double rgf(const MarketParams& params, const Profile2& profile);

}  // namespace zerorate
