#include "macsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "macsched/interval_solver.hpp"

namespace macsched {

namespace {

struct Split {
  double value = -std::numeric_limits<double>::infinity();
  double p1 = 0.0, p2 = 0.0;
};

/// Full grid over the (p1, p2) box at fixed interval powers; the common
/// power is whatever both residuals leave over.
Split best_split(double pbar1, double pbar2, const RewardWeights& mu, const ChannelParams& cp,
                 int steps) {
  const double a = cp.a();
  const double w = cp.w_tot / std::log(2.0);
  const double w10 = mu.mu1 - mu.mu2;
  const double w20 = mu.mu2 - mu.mu0;
  const int n1 = pbar1 > 0.0 ? steps : 1;
  const int n2 = pbar2 > 0.0 ? steps : 1;
  Split best;
  for (int i = 0; i < n1; ++i) {
    const double p1 = n1 == 1 ? 0.0 : pbar1 * i / (n1 - 1);
    const double c1 = w * std::log1p(p1 / a);
    const double r1 = pbar1 - p1;
    for (int j = 0; j < n2; ++j) {
      const double p2 = n2 == 1 ? 0.0 : pbar2 * j / (n2 - 1);
      const double r2 = pbar2 - p2;
      double p0 = 0.0;
      if (r1 > 0.0 && r2 > 0.0) {
        const double s = std::sqrt(r1) + std::sqrt(r2);
        p0 = s * s;
      }
      const double c12 = w * std::log1p((p1 + p2) / a);
      const double c012 = w * std::log1p((p0 + p1 + p2) / a);
      const double f = w10 * c1 + w20 * c12 + mu.mu0 * c012;
      if (f > best.value) best = {f, p1, p2};
    }
  }
  return best;
}

/// Lazily filled table of best_split values over a fixed index lattice.
class SplitMemo {
 public:
  SplitMemo(int rows, int cols) : cols_(cols), cells_(static_cast<std::size_t>(rows) * cols) {}

  const Split& at(int i, int j, double pbar1, double pbar2, const RewardWeights& mu,
                  const ChannelParams& cp, int steps) {
    Split& cell = cells_[static_cast<std::size_t>(i) * cols_ + j];
    if (cell.value == -std::numeric_limits<double>::infinity())
      cell = best_split(pbar1, pbar2, mu, cp, steps);
    return cell;
  }

 private:
  int cols_;
  std::vector<Split> cells_;
};

struct AxisGrid {
  std::vector<double> values;

  static AxisGrid linspace(double lo, double hi, int n) {
    AxisGrid g;
    g.values.resize(n);
    if (n == 1 || hi <= lo) {
      g.values.assign(n, lo);
      return g;
    }
    for (int i = 0; i < n; ++i) g.values[i] = lo + (hi - lo) * i / (n - 1);
    return g;
  }
  double lo() const { return values.front(); }
  double hi() const { return values.back(); }
};

struct NodeVars {
  // First-interval energy; for N=3 also the last-interval energy.
  AxisGrid x, z;
  double total = 0.0;
  double cum0 = 0.0, cum1 = 0.0;  // causality caps at the first boundaries
};

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  int i1 = 0, k1 = 0, i2 = 0, k2 = 0;
};

struct SnapAxis {
  double lo = 0.0, step = 0.0;
  int n = 1;
  int index(double v) const {
    if (step <= 0.0) return 0;
    return std::clamp(static_cast<int>(std::lround((v - lo) / step)), 0, n - 1);
  }
  double value(int idx) const { return lo + step * idx; }
};

SnapAxis make_snap(double lo, double hi, int n) {
  SnapAxis s;
  s.lo = std::max(0.0, lo);
  s.n = n;
  s.step = hi > s.lo ? (hi - s.lo) / (n - 1) : 0.0;
  return s;
}

}  // namespace

GridSpec GridSpec::make(int energy_steps, int power_steps, int refinement_rounds) {
  if (energy_steps < 2 || power_steps < 2)
    throw std::invalid_argument("GridSpec: step counts must be >= 2");
  if (refinement_rounds < 0)
    throw std::invalid_argument("GridSpec: refinement_rounds must be >= 0");
  return GridSpec{energy_steps, power_steps, refinement_rounds};
}

OracleResult brute_force_schedule(const Scenario& scenario, const RewardWeights& mu,
                                  const ChannelParams& cp, const GridSpec& grid) {
  const std::size_t n_int = scenario.intervals();
  if (n_int > 3) throw std::invalid_argument("brute_force_schedule: more than 3 intervals");
  if (grid.energy_steps < 2 || grid.power_steps < 2)
    throw std::invalid_argument("brute_force_schedule: invalid grid");

  const bool mirrored = mu.mirrored();
  const Scenario sc = mirrored ? scenario.swapped_nodes() : scenario;
  const RewardWeights cmu = mirrored ? mu.swapped() : mu;
  const int es = grid.energy_steps;
  const int ps = grid.power_steps;

  NodeVars v1, v2;
  for (int node = 1; node <= 2; ++node) {
    NodeVars& v = node == 1 ? v1 : v2;
    v.total = sc.total_energy(node);
    v.cum0 = sc.cumulative_energy(node, 0);
    v.cum1 = n_int >= 2 ? sc.cumulative_energy(node, 1) : v.total;
    v.x = AxisGrid::linspace(0.0, v.cum0, n_int >= 2 ? es : 1);
    if (n_int == 3)
      v.z = AxisGrid::linspace(std::max(0.0, v.total - v.cum1), v.total, es);
    else
      v.z = AxisGrid::linspace(0.0, 0.0, 1);
  }

  std::vector<double> round_objs;
  Candidate best;
  // ebar vectors of the incumbent, canonical orientation
  std::vector<double> e1(n_int, 0.0), e2(n_int, 0.0);

  const int rounds = 1 + grid.refinement_rounds;
  for (int round = 0; round < rounds; ++round) {
    if (round > 0) {
      // 10x zoom around the incumbent, clipped to the feasible box.
      for (int node = 1; node <= 2; ++node) {
        NodeVars& v = node == 1 ? v1 : v2;
        const Candidate& b = best;
        const double xc = v.x.values[node == 1 ? b.i1 : b.i2];
        const double xw = (v.x.hi() - v.x.lo()) / 10.0;
        v.x = AxisGrid::linspace(std::max(0.0, xc - xw), std::min(v.cum0, xc + xw),
                                 static_cast<int>(v.x.values.size()));
        if (n_int == 3) {
          const double zc = v.z.values[node == 1 ? b.k1 : b.k2];
          const double zw = (v.z.hi() - v.z.lo()) / 10.0;
          v.z = AxisGrid::linspace(std::max({0.0, v.total - v.cum1, zc - zw}),
                                   std::min(v.total, zc + zw),
                                   static_cast<int>(v.z.values.size()));
        }
      }
    }

    Candidate round_best;
    if (n_int == 1) {
      round_best = {0.0, 0, 0, 0, 0};
      const Split s =
          best_split(v1.total / sc.length(0), v2.total / sc.length(0), cmu, cp, ps);
      round_best.value = s.value * sc.length(0);
    } else if (n_int == 2) {
      const int nx1 = static_cast<int>(v1.x.values.size());
      const int nx2 = static_cast<int>(v2.x.values.size());
      SplitMemo m0(nx1, nx2), m1(nx1, nx2);
      for (int i = 0; i < nx1; ++i) {
        const double x1 = v1.x.values[i];
        for (int j = 0; j < nx2; ++j) {
          const double x2 = v2.x.values[j];
          const double f0 =
              m0.at(i, j, x1 / sc.length(0), x2 / sc.length(0), cmu, cp, ps).value;
          const double f1 = m1.at(i, j, (v1.total - x1) / sc.length(1),
                                  (v2.total - x2) / sc.length(1), cmu, cp, ps)
                                .value;
          const double obj = f0 * sc.length(0) + f1 * sc.length(1);
          if (obj > round_best.value) round_best = {obj, i, 0, j, 0};
        }
      }
    } else {
      const int nx1 = static_cast<int>(v1.x.values.size());
      const int nz1 = static_cast<int>(v1.z.values.size());
      const int nx2 = static_cast<int>(v2.x.values.size());
      const int nz2 = static_cast<int>(v2.z.values.size());
      SplitMemo m0(nx1, nx2), m2(nz1, nz2);
      const int snap_n = ps;
      const SnapAxis s1 = make_snap((v1.total - v1.x.hi() - v1.z.hi()) / sc.length(1),
                                    (v1.total - v1.x.lo() - v1.z.lo()) / sc.length(1), snap_n);
      const SnapAxis s2 = make_snap((v2.total - v2.x.hi() - v2.z.hi()) / sc.length(1),
                                    (v2.total - v2.x.lo() - v2.z.lo()) / sc.length(1), snap_n);
      SplitMemo m1(snap_n, snap_n);
      const double feas_eps = 1e-12 * std::max(v1.total + v2.total, 1.0);
      for (int i = 0; i < nx1; ++i) {
        const double x1 = v1.x.values[i];
        for (int k = 0; k < nz1; ++k) {
          const double z1 = v1.z.values[k];
          const double mid1 = v1.total - x1 - z1;
          if (mid1 < -feas_eps) continue;
          const int si = s1.index(std::max(0.0, mid1) / sc.length(1));
          for (int j = 0; j < nx2; ++j) {
            const double x2 = v2.x.values[j];
            const double f0 =
                m0.at(i, j, x1 / sc.length(0), x2 / sc.length(0), cmu, cp, ps).value;
            for (int l = 0; l < nz2; ++l) {
              const double z2 = v2.z.values[l];
              const double mid2 = v2.total - x2 - z2;
              if (mid2 < -feas_eps) continue;
              const int sj = s2.index(std::max(0.0, mid2) / sc.length(1));
              const double f1 =
                  m1.at(si, sj, s1.value(si), s2.value(sj), cmu, cp, ps).value;
              const double f2 = m2.at(k, l, z1 / sc.length(2), z2 / sc.length(2), cmu, cp, ps)
                                    .value;
              const double obj =
                  f0 * sc.length(0) + f1 * sc.length(1) + f2 * sc.length(2);
              if (obj > round_best.value) round_best = {obj, i, k, j, l};
            }
          }
        }
      }
    }
    best = round_best;

    // Incumbent energies at the current grids.
    if (n_int == 1) {
      e1[0] = v1.total;
      e2[0] = v2.total;
    } else if (n_int == 2) {
      e1 = {v1.x.values[best.i1], v1.total - v1.x.values[best.i1]};
      e2 = {v2.x.values[best.i2], v2.total - v2.x.values[best.i2]};
    } else {
      const double x1 = v1.x.values[best.i1], z1 = v1.z.values[best.k1];
      const double x2 = v2.x.values[best.i2], z2 = v2.z.values[best.k2];
      e1 = {x1, std::max(0.0, v1.total - x1 - z1), z1};
      e2 = {x2, std::max(0.0, v2.total - x2 - z2), z2};
    }

    // Exact re-evaluation of the incumbent (the N=3 middle interval is
    // memoized on a snapped lattice during the scan).
    double exact = 0.0;
    for (std::size_t n = 0; n < n_int; ++n)
      exact +=
          best_split(e1[n] / sc.length(n), e2[n] / sc.length(n), cmu, cp, ps).value *
          sc.length(n);
    round_objs.push_back(exact);
  }

  OracleResult res;
  res.mu = mu;
  res.scenario_key = scenario.fingerprint();
  res.round_objectives = std::move(round_objs);
  res.schedule.p0.resize(n_int);
  res.schedule.p1.resize(n_int);
  res.schedule.p2.resize(n_int);
  res.schedule.rho.resize(n_int);
  for (std::size_t n = 0; n < n_int; ++n) {
    const double pb1 = e1[n] / sc.length(n);
    const double pb2 = e2[n] / sc.length(n);
    const Split s = best_split(pb1, pb2, cmu, cp, ps);
    const double r1 = pb1 - s.p1, r2 = pb2 - s.p2;
    double p0 = 0.0, rho = 0.5;
    if (r1 > 0.0 && r2 > 0.0) {
      const double q1 = std::sqrt(r1), q2 = std::sqrt(r2);
      p0 = (q1 + q2) * (q1 + q2);
      rho = q1 / (q1 + q2);
    }
    res.schedule.p0[n] = p0;
    res.schedule.p1[n] = s.p1;
    res.schedule.p2[n] = s.p2;
    res.schedule.rho[n] = rho;
  }
  res.ebar1 = e1;
  res.ebar2 = e2;
  res.departure = departure(res.schedule, sc, cp);
  if (mirrored) {
    std::swap(res.ebar1, res.ebar2);
    std::swap(res.schedule.p1, res.schedule.p2);
    for (double& r : res.schedule.rho) r = 1.0 - r;
    std::swap(res.departure.b1, res.departure.b2);
  }
  res.objective =
      mu.mu0 * res.departure.b0 + mu.mu1 * res.departure.b1 + mu.mu2 * res.departure.b2;
  return res;
}

CompareReport compare(const SolveResult& waterfill, const OracleResult& oracle, double slack) {
  if (waterfill.scenario_key != oracle.scenario_key)
    throw std::invalid_argument("compare: results are from different scenarios");
  CompareReport rep;
  rep.oracle_objective = oracle.objective;
  const DepartureTriplet& w = waterfill.departure;
  rep.waterfill_objective = oracle.mu.mu0 * w.b0 + oracle.mu.mu1 * w.b1 + oracle.mu.mu2 * w.b2;
  rep.delta = rep.oracle_objective - rep.waterfill_objective;
  rep.slack_abs = slack * std::abs(rep.oracle_objective);
  rep.db0 = oracle.departure.b0 - w.b0;
  rep.db1 = oracle.departure.b1 - w.b1;
  rep.db2 = oracle.departure.b2 - w.b2;
  rep.pass = rep.delta <= rep.slack_abs;
  return rep;
}

}  // namespace macsched
