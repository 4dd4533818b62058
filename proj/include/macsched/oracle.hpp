#pragma once

#include <cstddef>
#include <vector>

#include "macsched/channel.hpp"
#include "macsched/power_schedule.hpp"
#include "macsched/reward.hpp"
#include "macsched/scenario.hpp"
#include "macsched/waterfill.hpp"

namespace macsched {

struct GridSpec {
  int energy_steps = 41;      // discretization levels per energy decision
  int power_steps = 61;       // levels per axis of the (p1, p2) split search
  int refinement_rounds = 2;  // local re-grid passes around the incumbent, 10x zoom

  static GridSpec make(int energy_steps, int power_steps, int refinement_rounds);
};

/// Best discretized schedule found by exhaustive search.
struct OracleResult {
  std::vector<double> ebar1, ebar2;  // per-interval consumed energy, J
  PowerSchedule schedule;
  DepartureTriplet departure;
  double objective = 0.0;
  RewardWeights mu{0.0, 1.0, 0.0};
  std::size_t scenario_key = 0;
  std::vector<double> round_objectives;  // incumbent after each search round
};

/// Exhaustive search over causal energy-deferral profiles and per-interval
/// (p1, p2) splits. Refuses scenarios with more than three intervals.
OracleResult brute_force_schedule(const Scenario& scenario, const RewardWeights& mu,
                                  const ChannelParams& cp, const GridSpec& grid = {});

struct CompareReport {
  bool pass = false;
  double oracle_objective = 0.0;
  double waterfill_objective = 0.0;
  double delta = 0.0;  // oracle - waterfill; positive means the solver fell short
  double slack_abs = 0.0;
  double db0 = 0.0, db1 = 0.0, db2 = 0.0;
};

/// Pass iff the oracle does not beat the solver by more than `slack`
/// (a fraction of the oracle objective). Throws on mismatched scenarios.
CompareReport compare(const SolveResult& waterfill, const OracleResult& oracle,
                      double slack = 0.01);

}  // namespace macsched
