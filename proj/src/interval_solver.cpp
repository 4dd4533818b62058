#include "macsched/interval_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace macsched {

namespace {

constexpr double kPowerSnap = 1e-10;  // W; below this a power is pinned to zero

/// Brent-style 1-D maximization on [lo, hi]. The objectives here are concave
/// (hence unimodal), so parabolic steps converge superlinearly and the golden
/// fallback guards the end-game.
template <typename F>
double maximize_scalar(F&& f, double lo, double hi) {
  constexpr double golden = 0.3819660112501051;
  constexpr double rel_tol = 1e-10;
  constexpr double abs_tol = 1e-13;
  double a = lo, b = hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol = rel_tol * std::abs(x) + abs_tol;
    if (std::abs(x - m) <= 2.0 * tol - 0.5 * (b - a)) break;
    double step = 0.0;
    bool parabolic = false;
    if (std::abs(e) > tol) {
      // Fit a parabola through x, w, v.
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        step = x + d;
        if (step - a < 2.0 * tol || b - step < 2.0 * tol) d = (m > x) ? tol : -tol;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x < m) ? b - x : a - x;
      d = golden * e;
    }
    const double u = (std::abs(d) >= tol) ? x + d : x + ((d > 0.0) ? tol : -tol);
    const double fu = f(u);
    if (fu >= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu >= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu >= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

/// Stationarity residuals for an interior-common allocation, in normalized
/// power units (everything divided by the channel constant A).
struct StationarityEq {
  double pb1, pb2;
  RewardWeights mu;

  /// F1 = d1 - lambda1, F2 = d2 - lambda2 at individual powers (u1, u2).
  void eval(double u1, double u2, double& f1, double& f2) const {
    const double r1 = pb1 - u1;
    const double r2 = pb2 - u2;
    const double s = std::sqrt(r1) + std::sqrt(r2);
    const double q0 = s * s;
    const double d0 = mu.mu0 / (1.0 + q0 + u1 + u2);
    const double d2 = d0 + (mu.mu2 - mu.mu0) / (1.0 + u1 + u2);
    const double d1 = d2 + (mu.mu1 - mu.mu2) / (1.0 + u1);
    f1 = d1 - d0 * (1.0 + std::sqrt(r2 / r1));
    f2 = d2 - d0 * (1.0 + std::sqrt(r1 / r2));
  }
};

/// Brent localizes the argmax only to about sqrt(eps) relative precision, not
/// enough for water-level comparisons at 1e-6. A few Newton steps on the
/// stationarity equations of the active pattern sharpen the interior powers;
/// the polish is skipped whenever a step leaves the pattern.
void polish_split(IntervalAllocation& alloc, const RewardWeights& mu, const ChannelParams& cp) {
  const double inv_a = 1.0 / cp.a();
  const double pb1 = alloc.pbar1 * inv_a;
  const double pb2 = alloc.pbar2 * inv_a;
  double u1 = alloc.p1 * inv_a;
  double u2 = alloc.p2 * inv_a;
  const double margin = 1e-9;
  const bool free1 = u1 > 0.0 && u1 < pb1 - margin;
  const bool free2 = u2 > 0.0 && u2 < pb2 - margin;
  if (u1 >= pb1 - margin || u2 >= pb2 - margin) return;  // no common power active
  if (!free1 && !free2) return;                          // closed form already exact

  const StationarityEq eq{pb1, pb2, mu};
  for (int it = 0; it < 12; ++it) {
    double f1, f2;
    eq.eval(u1, u2, f1, f2);
    const double scale = std::max(mu.mu1, mu.mu0);
    if (std::abs(free1 ? f1 : 0.0) + std::abs(free2 ? f2 : 0.0) < 1e-13 * scale) break;
    const double h1 = std::max(1e-8, 1e-7 * u1);
    const double h2 = std::max(1e-8, 1e-7 * u2);
    double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;
    double a1, a2, b1, b2;
    if (free1) {
      eq.eval(std::min(u1 + h1, pb1 - margin), u2, a1, a2);
      eq.eval(std::max(u1 - h1, 0.0), u2, b1, b2);
      const double dh = std::min(u1 + h1, pb1 - margin) - std::max(u1 - h1, 0.0);
      j11 = (a1 - b1) / dh;
      j21 = (a2 - b2) / dh;
    }
    if (free2) {
      eq.eval(u1, std::min(u2 + h2, pb2 - margin), a1, a2);
      eq.eval(u1, std::max(u2 - h2, 0.0), b1, b2);
      const double dh = std::min(u2 + h2, pb2 - margin) - std::max(u2 - h2, 0.0);
      j12 = (a1 - b1) / dh;
      j22 = (a2 - b2) / dh;
    }
    double s1 = 0.0, s2 = 0.0;
    if (free1 && free2) {
      const double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-30) return;
      s1 = (-f1 * j22 + f2 * j12) / det;
      s2 = (-f2 * j11 + f1 * j21) / det;
    } else if (free1) {
      if (std::abs(j11) < 1e-30) return;
      s1 = -f1 / j11;
    } else {
      if (std::abs(j22) < 1e-30) return;
      s2 = -f2 / j22;
    }
    const double n1 = u1 + s1;
    const double n2 = u2 + s2;
    if (n1 < 0.0 || n1 > pb1 - margin || n2 < 0.0 || n2 > pb2 - margin)
      return;  // the Newton step leaves the pattern; keep the Brent solution
    u1 = n1;
    u2 = n2;
  }
  alloc.p1 = u1 * cp.a();
  alloc.p2 = u2 * cp.a();
}

IntervalAllocation mirrored_copy(const IntervalAllocation& a, MuCase canonical_case) {
  IntervalAllocation m = a;
  std::swap(m.p1, m.p2);
  std::swap(m.pbar1, m.pbar2);
  std::swap(m.lambda1, m.lambda2);
  std::swap(m.chi1, m.chi2);
  std::swap(m.lambda1_bound, m.lambda2_bound);
  m.rho = 1.0 - a.rho;
  if (canonical_case == MuCase::T) {
    static constexpr int remap[9] = {0, 1, 2, 4, 3, 6, 5, 7, 8};
    m.region = remap[a.region];
  } else if (canonical_case == MuCase::Q) {
    static constexpr int remap[5] = {0, 1, 2, 4, 3};
    m.region = remap[a.region];
  }
  return m;
}

void finish_allocation(IntervalAllocation& alloc, const RewardWeights& mu,
                       const ChannelParams& cp, MuCase mu_case) {
  const double a = std::max(0.0, alloc.pbar1 - alloc.p1);
  const double b = std::max(0.0, alloc.pbar2 - alloc.p2);
  alloc.p0 = common_power(alloc.pbar1, alloc.p1, alloc.pbar2, alloc.p2);
  if (alloc.p0 > 0.0) {
    alloc.rho = std::sqrt(a) / (std::sqrt(a) + std::sqrt(b));
  } else if (alloc.pbar2 <= 0.0 && alloc.pbar1 > 0.0) {
    alloc.rho = 1.0;
  } else if (alloc.pbar1 <= 0.0 && alloc.pbar2 > 0.0) {
    alloc.rho = 0.0;
  } else {
    alloc.rho = 0.5;
  }
  const RecoveredMultipliers rec =
      recover_multipliers({alloc.p0, alloc.p1, alloc.p2, alloc.rho}, alloc.pbar1, alloc.pbar2,
                          mu, cp);
  alloc.lambda1 = rec.lambda1;
  alloc.lambda2 = rec.lambda2;
  alloc.lambda1_bound = rec.lambda1_bound;
  alloc.lambda2_bound = rec.lambda2_bound;
  alloc.chi1 = rec.chi1;
  alloc.chi2 = rec.chi2;
  alloc.region = classify_region(alloc, mu_case);
}

}  // namespace

double g_fun(double l1, double l2) {
  if (l1 < 0.0 || l2 < 0.0 || (l1 == 0.0 && l2 == 0.0))
    throw std::domain_error("g_fun: multipliers must be non-negative, not both zero");
  return l1 * l2 / (l1 + l2);
}

double rho_from_multipliers(double l1p, double l2p) {
  if (l1p < 0.0 || l2p < 0.0 || l1p + l2p <= 0.0)
    throw std::domain_error("rho_from_multipliers: multipliers must be non-negative, not both zero");
  return l2p / (l1p + l2p);
}

double common_power(double pbar1, double p1, double pbar2, double p2) {
  const double a = pbar1 - p1;
  const double b = pbar2 - p2;
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const double s = std::sqrt(a) + std::sqrt(b);
  return s * s;
}

double weighted_rate(double p1, double p2, double pbar1, double pbar2,
                     const RewardWeights& mu, const ChannelParams& cp) {
  const double p0 = common_power(pbar1, p1, pbar2, p2);
  const double c1 = capacity(p1, cp);
  const double c12 = capacity(p1 + p2, cp);
  const double c012 = capacity(p0 + p1 + p2, cp);
  return (mu.mu1 - mu.mu2) * c1 + (mu.mu2 - mu.mu0) * c12 + mu.mu0 * c012;
}

IntervalAllocation solve_interval(double pbar1, double pbar2, const RewardWeights& mu,
                                  const ChannelParams& cp) {
  if (pbar1 < 0.0 || pbar2 < 0.0)
    throw std::domain_error("solve_interval: negative assigned power");
  if (mu.mirrored())
    return mirrored_copy(solve_interval(pbar2, pbar1, mu.swapped(), cp),
                         mu.swapped().ordering());

  const MuCase mu_case = mu.ordering();
  // Budgets below the power resolution degenerate the split search; treat
  // them as empty.
  if (pbar1 < kPowerSnap) pbar1 = 0.0;
  if (pbar2 < kPowerSnap) pbar2 = 0.0;
  IntervalAllocation alloc;
  alloc.pbar1 = pbar1;
  alloc.pbar2 = pbar2;

  if (pbar1 <= 0.0 && pbar2 <= 0.0) {
    finish_allocation(alloc, mu, cp, mu_case);
    return alloc;
  }
  if (pbar2 <= 0.0) {
    // Single-node interval: no coherent common transmission is possible, the
    // node sends its individual message at full power.
    alloc.p1 = pbar1;
    finish_allocation(alloc, mu, cp, mu_case);
    return alloc;
  }
  if (pbar1 <= 0.0) {
    alloc.p2 = pbar2;
    finish_allocation(alloc, mu, cp, mu_case);
    return alloc;
  }

  switch (mu_case) {
    case MuCase::Q:
      // All power goes to the beamformed common message.
      break;
    case MuCase::S: {
      alloc.p1 = maximize_scalar(
          [&](double p1) { return weighted_rate(p1, 0.0, pbar1, pbar2, mu, cp); }, 0.0, pbar1);
      break;
    }
    case MuCase::T: {
      auto best_p2 = [&](double p1) {
        return maximize_scalar(
            [&](double p2) { return weighted_rate(p1, p2, pbar1, pbar2, mu, cp); }, 0.0, pbar2);
      };
      alloc.p1 = maximize_scalar(
          [&](double p1) { return weighted_rate(p1, best_p2(p1), pbar1, pbar2, mu, cp); }, 0.0,
          pbar1);
      alloc.p2 = best_p2(alloc.p1);
      break;
    }
  }
  if (alloc.p1 < kPowerSnap) alloc.p1 = 0.0;
  if (alloc.p1 > pbar1 - kPowerSnap) alloc.p1 = pbar1;
  if (alloc.p2 < kPowerSnap) alloc.p2 = 0.0;
  if (alloc.p2 > pbar2 - kPowerSnap) alloc.p2 = pbar2;
  if (mu_case != MuCase::Q) {
    polish_split(alloc, mu, cp);
    if (alloc.p1 < kPowerSnap) alloc.p1 = 0.0;
    if (alloc.p2 < kPowerSnap) alloc.p2 = 0.0;
  }
  finish_allocation(alloc, mu, cp, mu_case);
  return alloc;
}

RecoveredMultipliers recover_multipliers(const AllocationPowers& powers, double pbar1,
                                         double pbar2, const RewardWeights& mu,
                                         const ChannelParams& cp) {
  if (mu.mirrored())
    throw std::logic_error("recover_multipliers: weights must be canonical (mu1 >= mu2)");
  const double inv_a = 1.0 / cp.a();
  const double q0 = powers.p0 * inv_a;
  const double q1 = powers.p1 * inv_a;
  const double q2 = powers.p2 * inv_a;
  const double d0 = mu.mu0 / (1.0 + q0 + q1 + q2);
  const double d2 = d0 + (mu.mu2 - mu.mu0) / (1.0 + q1 + q2);
  const double d1 = d2 + (mu.mu1 - mu.mu2) / (1.0 + q1);

  const double res1 = pbar1 - powers.p1;
  const double res2 = pbar2 - powers.p2;

  RecoveredMultipliers rec;
  rec.chi1 = std::numeric_limits<double>::quiet_NaN();
  rec.chi2 = std::numeric_limits<double>::quiet_NaN();
  if (res1 > 0.0 && res2 > 0.0) {
    rec.chi1 = std::sqrt(res1 / res2);
    rec.chi2 = 1.0 / rec.chi1;
  }

  if (powers.p0 > 0.0) {
    if (res1 > 0.0 && res2 > 0.0) {
      // Interior rho: both nodes price the common power.
      rec.lambda1 = d0 * (1.0 + rec.chi1) / rec.chi1;
      rec.lambda2 = d0 * (1.0 + rec.chi2) / rec.chi2;
      rec.lambda1_bound = false;
      rec.lambda2_bound = false;
    } else if (res2 <= 0.0) {  // rho = 1
      rec.lambda1 = d0;
      rec.lambda1_bound = false;
      rec.lambda2 = d2;
      rec.lambda2_bound = !(powers.p2 > 0.0);
    } else {  // rho = 0
      rec.lambda2 = d0;
      rec.lambda2_bound = false;
      rec.lambda1 = d1;
      rec.lambda1_bound = !(powers.p1 > 0.0);
    }
  } else {
    rec.lambda1 = d1;
    rec.lambda1_bound = !(powers.p1 > 0.0);
    rec.lambda2 = d2;
    rec.lambda2_bound = !(powers.p2 > 0.0);
  }
  if (rec.lambda1 < 0.0 || rec.lambda2 < 0.0)
    throw std::logic_error("recover_multipliers: power pattern matches no optimality region");
  return rec;
}

int classify_region(const IntervalAllocation& alloc, MuCase mu_case) {
  const bool h0 = alloc.p0 > 0.0;
  const bool h1 = alloc.p1 > 0.0;
  const bool h2 = alloc.p2 > 0.0;
  switch (mu_case) {
    case MuCase::T:
      if (!h0 && !h1 && !h2) return 1;
      if (h0 && !h1 && !h2) return 2;
      if (!h0 && h1 && !h2) return 3;
      if (!h0 && !h1 && h2) return 4;
      if (h0 && h1 && !h2) return 5;
      if (h0 && !h1 && h2) return 6;
      if (!h0 && h1 && h2) return 7;
      return 8;
    case MuCase::S:
      if (!h0 && !h1 && !h2) return 1;
      if (!h0 && h1 && !h2) return 2;
      if (h0 && !h1 && !h2) return 3;
      if (h0 && h1 && !h2) return 4;
      if (!h0 && !h1 && h2) return 5;  // single-node fallback, node 2 alone
      break;
    case MuCase::Q:
      if (!h0 && !h1 && !h2) return 1;
      if (h0 && !h1 && !h2) return 2;
      if (!h0 && h1 && !h2) return 3;  // single-node fallback, node 1 alone
      if (!h0 && !h1 && h2) return 4;  // single-node fallback, node 2 alone
      break;
  }
  throw std::logic_error("classify_region: power pattern matches no optimality region");
}

}  // namespace macsched
