#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "macsched/channel.hpp"
#include "macsched/interval_solver.hpp"
#include "macsched/power_schedule.hpp"
#include "macsched/reward.hpp"
#include "macsched/scenario.hpp"

namespace macsched {

/// The five water levels of an interval. wl4/wl5 are the inverse cumulative
/// multipliers the backward transfers equalize; they are undefined ("absent")
/// when the node has no assigned power in the interval.
struct WaterLevels {
  double wl1 = 0.0, wl2 = 0.0, wl3 = 0.0, wl4 = 0.0, wl5 = 0.0;
  bool has1 = false, has2 = false, has3 = false, has4 = false, has5 = false;
};

WaterLevels water_levels(const IntervalAllocation& alloc, const RewardWeights& mu,
                         const ChannelParams& cp);

/// Mutable solver state: per-interval assigned energies plus the matching
/// single-interval optima. Always kept in canonical node orientation
/// (mu1 >= mu2); `mirrored` records whether the input had the roles swapped.
struct ScheduleState {
  Scenario scenario;
  RewardWeights mu{0.0, 1.0, 0.0};
  ChannelParams params{1.0, 1.0, 1.0};
  bool mirrored = false;

  std::vector<double> ebar1, ebar2;  // assigned energy per interval, J
  std::vector<IntervalAllocation> alloc;
  int iterations = 0;
  double max_mismatch = 0.0;
  bool converged = false;

  double ebar(int node, std::size_t n) const { return (node == 1 ? ebar1 : ebar2)[n]; }
  double pbar(int node, std::size_t n) const { return ebar(node, n) / scenario.length(n); }
  /// Net energy received via backward transfers (negative when the interval
  /// is a transfer source).
  double net_transfer(int node, std::size_t n) const {
    return ebar(node, n) - scenario.arrival(node, n);
  }

  PowerSchedule to_schedule() const;
  /// Canonical-orientation departure of the current allocations.
  DepartureTriplet departure_canonical() const;
  /// mu-weighted objective; invariant under node mirroring.
  double objective() const;

  void resolve_interval(std::size_t n);
};

/// Initial state: every harvest is consumed in its arrival interval (the
/// No-S allocation); requires canonical weights.
ScheduleState initial_state(const Scenario& scenario, const RewardWeights& mu,
                            const ChannelParams& cp);

/// One pairwise backward transfer: moves energy of `node` from interval n to
/// n+1 until its water level pair is equal, the bracket boundary is hit, or
/// no transfer is needed. Returns the transferred energy in J.
double equalize_pair(ScheduleState& state, int node, std::size_t n, double tol_wl);

struct SolveOptions {
  double tol = 1e-6;   // relative water-level mismatch at convergence
  int max_iter = 500;  // full node-1 + node-2 sweeps
  std::ostream* trace = nullptr;  // JSON-lines per transfer when set
};

struct SolveResult {
  ScheduleState state;          // canonical orientation
  DepartureTriplet departure;   // original orientation
  bool converged = false;
  std::size_t scenario_key = 0;

  /// Schedule in the original node orientation.
  PowerSchedule schedule_original() const;
};

/// Iterative backward water-filling (alternating node sweeps, last pair
/// first) from the arrival-interval initial state.
SolveResult schedule(const Scenario& scenario, const RewardWeights& mu, const ChannelParams& cp,
                     const SolveOptions& options = {});

/// KKT certificate of a solved state; all entries are relative residuals.
struct KktReport {
  double max_stationarity = 0.0;       // per-interval stationarity equalities/bounds
  double max_complementarity = 0.0;    // multiplier jumps only at tight causality constraints
  double max_monotonicity = 0.0;       // cumulative multipliers non-increasing in n
  double max_pairwise = 0.0;           // case-T cross-interval region conditions
  double max_residual() const;
};

KktReport kkt_residuals(const ScheduleState& state);

}  // namespace macsched
