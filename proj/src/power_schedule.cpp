#include "macsched/power_schedule.hpp"

#include <stdexcept>

namespace macsched {

RateTriplet boundary_rates(BoundaryPoint point, double p1, double p2, double p0,
                           const ChannelParams& cp) {
  if (p1 < 0.0 || p2 < 0.0 || p0 < 0.0)
    throw std::domain_error("boundary_rates: negative power");
  const double c1 = capacity(p1, cp);
  const double c2 = capacity(p2, cp);
  const double c12 = capacity(p1 + p2, cp);
  const double c012 = capacity(p0 + p1 + p2, cp);
  switch (point) {
    case BoundaryPoint::S:
      return {capacity(p0 + p1, cp) - c1, c1, 0.0};
    case BoundaryPoint::T:
      return {c012 - c12, c1, c12 - c1};
    case BoundaryPoint::U:
      return {c012 - c12, c12 - c2, c2};
    case BoundaryPoint::V:
      return {capacity(p0 + p2, cp) - c2, 0.0, c2};
    case BoundaryPoint::Q:
      return {c012, 0.0, 0.0};
  }
  throw std::invalid_argument("boundary_rates: unknown point");
}

DepartureTriplet departure(const PowerSchedule& schedule, const Scenario& scenario,
                           const ChannelParams& cp, MuCase) {
  if (schedule.intervals() != scenario.intervals())
    throw std::invalid_argument("departure: schedule/scenario dimension mismatch");
  // Point-T decomposition; for Case S allocations p2 = 0 collapses it to
  // point S and for Case Q p1 = p2 = 0 collapses it to point Q.
  DepartureTriplet b;
  for (std::size_t n = 0; n < schedule.intervals(); ++n) {
    const RateTriplet r =
        boundary_rates(BoundaryPoint::T, schedule.p1[n], schedule.p2[n], schedule.p0[n], cp);
    const double len = scenario.length(n);
    b.b0 += r.r0 * len;
    b.b1 += r.r1 * len;
    b.b2 += r.r2 * len;
  }
  return b;
}

std::vector<FeasibilityViolation> check_feasibility(const PowerSchedule& schedule,
                                                    const Scenario& scenario, double eps_feas) {
  if (schedule.intervals() != scenario.intervals())
    throw std::invalid_argument("check_feasibility: schedule/scenario dimension mismatch");
  std::vector<FeasibilityViolation> out;
  const std::size_t n_int = scenario.intervals();
  for (int node = 1; node <= 2; ++node) {
    double consumed = 0.0;
    for (std::size_t n = 0; n < n_int; ++n) {
      const double pbar = node == 1 ? schedule.pbar1(n) : schedule.pbar2(n);
      consumed += pbar * scenario.length(n);
      const double slack = scenario.cumulative_energy(node, n) - consumed;
      const bool last = n + 1 == n_int;
      if (slack < -eps_feas || (last && slack > eps_feas))
        out.push_back({node, n, slack});
    }
  }
  return out;
}

}  // namespace macsched
