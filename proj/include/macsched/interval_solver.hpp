#pragma once

#include <cmath>
#include <limits>

#include "macsched/channel.hpp"
#include "macsched/reward.hpp"

namespace macsched {

/// Optimum of the weighted-rate problem for one time interval at assigned
/// node powers (pbar1, pbar2). Multipliers are the cumulative Lagrange sums
/// in the normalized scaling lambda' = lambda * A * ln2 / W_tot.
struct IntervalAllocation {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double rho = 0.5;
  double pbar1 = 0.0;
  double pbar2 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int region = 1;
  double chi1 = std::numeric_limits<double>::quiet_NaN();
  double chi2 = std::numeric_limits<double>::quiet_NaN();
  // True when the multiplier is only a stationarity lower bound (the power
  // it prices is pinned at zero with dual slack).
  bool lambda1_bound = false;
  bool lambda2_bound = false;
};

/// g(l1, l2) = l1*l2/(l1+l2); the combined common-power multiplier.
double g_fun(double l1, double l2);

/// rho = l2 / (l1 + l2) for interior common-power splits.
double rho_from_multipliers(double l1p, double l2p);

/// Coherent common power available when the nodes leave (pbar1-p1, pbar2-p2)
/// for the common message. Zero unless both residuals are positive: common
/// data needs both transmitters.
double common_power(double pbar1, double p1, double pbar2, double p2);

/// Weighted point-T objective mu1*R1 + mu2*R2 + mu0*R0 for given individual
/// powers, with the common power forced by the residuals.
double weighted_rate(double p1, double p2, double pbar1, double pbar2,
                     const RewardWeights& mu, const ChannelParams& cp);

/// Maximizes the interval objective for canonical or mirrored weights and
/// recovers multipliers and the optimality-region index.
IntervalAllocation solve_interval(double pbar1, double pbar2, const RewardWeights& mu,
                                  const ChannelParams& cp);

struct AllocationPowers {
  double p0, p1, p2, rho;
};

/// Closed-form multiplier recovery from the stationarity equalities of the
/// active region. Requires canonical weights (mu1 >= mu2).
struct RecoveredMultipliers {
  double lambda1, lambda2;
  bool lambda1_bound, lambda2_bound;
  double chi1, chi2;
};
RecoveredMultipliers recover_multipliers(const AllocationPowers& powers, double pbar1,
                                         double pbar2, const RewardWeights& mu,
                                         const ChannelParams& cp);

/// Optimality-region index of the allocation's sign pattern. Case T has
/// regions 1..8, case S 1..4, case Q 1..2 plus 3 for the single-node
/// individual-data fallback.
int classify_region(const IntervalAllocation& alloc, MuCase mu_case);

}  // namespace macsched
