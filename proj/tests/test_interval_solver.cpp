#include <doctest.h>

#include <cmath>

#include "macsched/channel.hpp"
#include "macsched/interval_solver.hpp"
#include "macsched/reward.hpp"

using namespace macsched;

namespace {

const ChannelParams kChan = ChannelParams::make(1e6, 1e-19, 1e-11);

// Fine grid reference for the single-interval optimum at fixed node powers.
double grid_best(double pbar1, double pbar2, const RewardWeights& mu) {
  double best = -1.0;
  const int steps = 400;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j) {
      const double p1 = pbar1 * i / steps;
      const double p2 = pbar2 * j / steps;
      best = std::max(best, weighted_rate(p1, p2, pbar1, pbar2, mu, kChan));
    }
  return best;
}

}  // namespace

TEST_CASE("combined multiplier is the harmonic mean pair") {
  CHECK(g_fun(2.0, 2.0) == doctest::Approx(1.0));
  CHECK(g_fun(1.0, 3.0) == doctest::Approx(0.75));
  CHECK(g_fun(3.0, 1.0) == doctest::Approx(g_fun(1.0, 3.0)));
  CHECK(g_fun(5.0, 5.0) < 5.0);
}

TEST_CASE("cost split follows the multiplier ratio") {
  CHECK(rho_from_multipliers(1.0, 1.0) == doctest::Approx(0.5));
  CHECK(rho_from_multipliers(1.0, 3.0) == doctest::Approx(0.75));
  CHECK(rho_from_multipliers(3.0, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("common power needs both transmitters") {
  CHECK(common_power(4e-3, 4e-3, 5e-3, 2e-3) == 0.0);
  CHECK(common_power(4e-3, 2e-3, 5e-3, 5e-3) == 0.0);
  CHECK(common_power(4e-3, 2e-3, 0.0, 0.0) == 0.0);
  // Coherent combining: (sqrt(r1) + sqrt(r2))^2 > r1 + r2.
  const double p0 = common_power(4e-3, 1e-3, 5e-3, 2e-3);
  const double r1 = 3e-3, r2 = 3e-3;
  CHECK(p0 == doctest::Approx(std::pow(std::sqrt(r1) + std::sqrt(r2), 2)));
  CHECK(p0 > r1 + r2);
}

TEST_CASE("dominant common reward sends everything coherently") {
  const RewardWeights mu = RewardWeights::make(1.5, 1.0, 0.8);
  const double pb1 = 3e-3, pb2 = 5e-3;
  const IntervalAllocation a = solve_interval(pb1, pb2, mu, kChan);
  CHECK(a.p1 == 0.0);
  CHECK(a.p2 == 0.0);
  CHECK(a.p0 == doctest::Approx(std::pow(std::sqrt(pb1) + std::sqrt(pb2), 2)));
  CHECK(a.rho * a.rho * a.p0 == doctest::Approx(pb1));
}

TEST_CASE("zero common reward reduces to plain individual transmission") {
  const RewardWeights mu = RewardWeights::make(0.0, 1.0, 0.7);
  const IntervalAllocation a = solve_interval(3e-3, 5e-3, mu, kChan);
  CHECK(a.p0 == 0.0);
  CHECK(a.p1 == doctest::Approx(3e-3));
  CHECK(a.p2 == doctest::Approx(5e-3));
}

TEST_CASE("interval optimum matches a dense grid search") {
  struct Case {
    double mu0, mu1, mu2, pb1, pb2;
  };
  const Case cases[] = {
      {0.613, 1.0, 1.0, 1.5e-3, 2.0e-3},  // case T interior
      {0.9, 1.0, 0.4, 3.0e-3, 1.0e-3},    // case S
      {0.3, 1.0, 0.9, 5.0e-3, 4.0e-3},    // case T, low common reward
      {1.1, 1.0, 1.0, 2.0e-3, 0.0},       // lone node
  };
  for (const Case& c : cases) {
    const RewardWeights mu = RewardWeights::make(c.mu0, c.mu1, c.mu2);
    const IntervalAllocation a = solve_interval(c.pb1, c.pb2, mu, kChan);
    const double value = weighted_rate(a.p1, a.p2, c.pb1, c.pb2, mu, kChan);
    const double ref = grid_best(c.pb1, c.pb2, mu);
    CHECK(value >= ref - 1e-6 * std::max(ref, 1.0));
    CHECK(a.p1 >= 0.0);
    CHECK(a.p2 >= 0.0);
    CHECK(a.p1 <= c.pb1 + 1e-12);
    CHECK(a.p2 <= c.pb2 + 1e-12);
  }
}

TEST_CASE("allocation satisfies the stationarity equalities it reports") {
  const RewardWeights mu = RewardWeights::make(0.613, 1.0, 1.0);
  const double pb1 = 1.5e-3, pb2 = 2.0e-3;
  const IntervalAllocation a = solve_interval(pb1, pb2, mu, kChan);

  // Multipliers are the (normalized) marginal value of extra node energy:
  // compare against a numeric derivative of the interval optimum.
  const double scale = kChan.a() * std::log(2.0) / kChan.w_tot;
  const double h = 1e-8;
  auto value_at = [&](double b1, double b2) {
    const IntervalAllocation x = solve_interval(b1, b2, mu, kChan);
    return weighted_rate(x.p1, x.p2, b1, b2, mu, kChan);
  };
  const double d1 = (value_at(pb1 + h, pb2) - value_at(pb1 - h, pb2)) / (2 * h);
  const double d2 = (value_at(pb1, pb2 + h) - value_at(pb1, pb2 - h)) / (2 * h);
  CHECK(a.lambda1 == doctest::Approx(d1 * scale).epsilon(1e-4));
  CHECK(a.lambda2 == doctest::Approx(d2 * scale).epsilon(1e-4));
}

TEST_CASE("multiplier recovery agrees with the solved allocation") {
  const RewardWeights mu = RewardWeights::make(0.613, 1.0, 0.9);
  const double pb1 = 2.5e-3, pb2 = 2.0e-3;
  const IntervalAllocation a = solve_interval(pb1, pb2, mu, kChan);
  const RecoveredMultipliers r =
      recover_multipliers({a.p0, a.p1, a.p2, a.rho}, pb1, pb2, mu, kChan);
  CHECK(r.lambda1 == doctest::Approx(a.lambda1));
  CHECK(r.lambda2 == doctest::Approx(a.lambda2));
  CHECK(r.lambda1_bound == a.lambda1_bound);
  CHECK(r.lambda2_bound == a.lambda2_bound);
}

TEST_CASE("mirrored weights mirror the allocation") {
  const RewardWeights mu = RewardWeights::make(0.5, 1.0, 0.7);
  const double pb1 = 2e-3, pb2 = 3e-3;
  const IntervalAllocation a = solve_interval(pb1, pb2, mu, kChan);
  const IntervalAllocation b = solve_interval(pb2, pb1, mu.swapped(), kChan);
  CHECK(a.p1 == doctest::Approx(b.p2));
  CHECK(a.p2 == doctest::Approx(b.p1));
  CHECK(a.p0 == doctest::Approx(b.p0));
  CHECK(a.rho == doctest::Approx(1.0 - b.rho));
}

TEST_CASE("interval value is concave in the assigned powers") {
  const RewardWeights mu = RewardWeights::make(0.7, 1.0, 0.8);
  auto value_at = [&](double b1, double b2) {
    const IntervalAllocation x = solve_interval(b1, b2, mu, kChan);
    return weighted_rate(x.p1, x.p2, b1, b2, mu, kChan);
  };
  const double lo1 = 1e-3, lo2 = 4e-3, hi1 = 6e-3, hi2 = 1e-3;
  const double mid = value_at(0.5 * (lo1 + hi1), 0.5 * (lo2 + hi2));
  CHECK(mid >= 0.5 * (value_at(lo1, lo2) + value_at(hi1, hi2)) - 1e-6);
}

TEST_CASE("region index covers the allocation's sign pattern") {
  const IntervalAllocation t =
      solve_interval(1.5e-3, 2.0e-3, RewardWeights::make(0.613, 1.0, 1.0), kChan);
  CHECK(classify_region(t, MuCase::T) == t.region);
  const IntervalAllocation q =
      solve_interval(3e-3, 5e-3, RewardWeights::make(1.5, 1.0, 0.8), kChan);
  CHECK(classify_region(q, MuCase::Q) == q.region);
}
