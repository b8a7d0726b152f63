#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "zerorate/market.hpp"

namespace testsupport {

/// Independent 2-CP Wardrop oracle: bisect on lambda1 until both user costs
/// agree. Shares no code path with the library's alpha-based solvers.
/// Capacities must already be the effective (possibly reduced) ones.
inline std::vector<double> oracle_split_two_cp(double m1, double m2,
                                               double lambda, double c,
                                               double g1, double g2) {
  double lo = std::max(0.0, lambda - m2 * 0.999999999);
  double hi = std::min(m1 * 0.999999999, lambda);
  const auto diff = [&](double l1) {
    return zerorate::user_cost(l1, m1, c, g1) -
           zerorate::user_cost(lambda - l1, m2, c, g2);
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (diff(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double l1 = 0.5 * (lo + hi);
  return {l1, lambda - l1};
}

/// Locates a sign change of f on [lo, hi] by scanning `points` cells and
/// bisecting the first bracketing cell. Returns nullopt when no cell
/// brackets a sign change.
template <typename F>
std::optional<double> oracle_sign_change(F f, double lo, double hi,
                                         int points = 400) {
  double prev_x = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= points; ++i) {
    const double x = lo + (hi - lo) * i / points;
    const double fx = f(x);
    if ((prev_f < 0.0) != (fx < 0.0)) {
      double a = prev_x, b = x;
      for (int k = 0; k < 100; ++k) {
        const double mid = 0.5 * (a + b);
        if ((f(mid) < 0.0) == (prev_f < 0.0)) {
          a = mid;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    prev_x = x;
    prev_f = fx;
  }
  return std::nullopt;
}

}  // namespace testsupport
