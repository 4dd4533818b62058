#pragma once

#include <cstddef>
#include <vector>

#include "macsched/channel.hpp"
#include "macsched/reward.hpp"
#include "macsched/scenario.hpp"

namespace macsched {

/// Per-interval transmit powers. p0 is the coherent common-message power,
/// rho splits its cost between the nodes: node 1 spends rho^2*p0, node 2
/// spends (1-rho)^2*p0 on top of its individual power.
struct PowerSchedule {
  std::vector<double> p0, p1, p2, rho;

  std::size_t intervals() const { return p0.size(); }
  double pbar1(std::size_t n) const { return p1[n] + rho[n] * rho[n] * p0[n]; }
  double pbar2(std::size_t n) const {
    const double c = 1.0 - rho[n];
    return p2[n] + c * c * p0[n];
  }
};

struct DepartureTriplet {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

enum class BoundaryPoint { Q, S, T, U, V };

struct RateTriplet {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Rates of the named corner of the single-interval capacity region.
RateTriplet boundary_rates(BoundaryPoint point, double p1, double p2, double p0,
                           const ChannelParams& cp);

/// Delivered bits of a schedule: interval-length-weighted corner rates. The
/// corner follows the reward ordering; S and Q coincide with the point-T
/// formulas once the solver has zeroed the corresponding powers.
DepartureTriplet departure(const PowerSchedule& schedule, const Scenario& scenario,
                           const ChannelParams& cp, MuCase mu_case = MuCase::T);

struct FeasibilityViolation {
  int node;             // 1 or 2
  std::size_t interval; // 0-based
  double slack_j;       // negative when the causality bound is exceeded
};

/// Causality check: partial consumed energy must stay below the harvest
/// envelope, and the last interval must exhaust it. Violations are data.
std::vector<FeasibilityViolation> check_feasibility(const PowerSchedule& schedule,
                                                    const Scenario& scenario,
                                                    double eps_feas = 1e-9);

}  // namespace macsched
