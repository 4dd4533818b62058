#include "macsched/baselines.hpp"

#include <utility>

namespace macsched {

namespace {

SolveResult finish(ScheduleState st, const Scenario& original, bool mirrored) {
  st.mirrored = mirrored;
  st.converged = true;
  SolveResult r;
  DepartureTriplet dep = st.departure_canonical();
  if (mirrored) std::swap(dep.b1, dep.b2);
  r.state = std::move(st);
  r.departure = dep;
  r.converged = true;
  r.scenario_key = original.fingerprint();
  return r;
}

}  // namespace

SolveResult no_scheduling(const Scenario& scenario, const RewardWeights& mu,
                          const ChannelParams& cp) {
  const bool mirrored = mu.mirrored();
  ScheduleState st = initial_state(mirrored ? scenario.swapped_nodes() : scenario,
                                   mirrored ? mu.swapped() : mu, cp);
  return finish(std::move(st), scenario, mirrored);
}

SolveResult uniform_scheduling(const Scenario& scenario, const RewardWeights& mu,
                               const ChannelParams& cp) {
  const bool mirrored = mu.mirrored();
  const Scenario sc = mirrored ? scenario.swapped_nodes() : scenario;
  ScheduleState st = initial_state(sc, mirrored ? mu.swapped() : mu, cp);
  const std::size_t n_int = sc.intervals();
  for (int node = 1; node <= 2; ++node) {
    auto& ebar = node == 1 ? st.ebar1 : st.ebar2;
    for (std::size_t n = 0; n < n_int; ++n) ebar[n] = 0.0;
    for (const HarvestEvent& ev : sc.events(node)) {
      const double power = ev.energy_j / (sc.t_final() - ev.time_s);
      for (std::size_t n = 0; n < n_int; ++n)
        if (sc.boundary(n) >= ev.time_s) ebar[n] += power * sc.length(n);
    }
  }
  for (std::size_t n = 0; n < n_int; ++n) st.resolve_interval(n);
  return finish(std::move(st), scenario, mirrored);
}

}  // namespace macsched
