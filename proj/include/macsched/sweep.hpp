#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "macsched/channel.hpp"
#include "macsched/power_schedule.hpp"
#include "macsched/reward.hpp"
#include "macsched/scenario.hpp"
#include "macsched/waterfill.hpp"

namespace macsched {

/// Reward triples to solve, in order. Only the direction of mu matters, so
/// grids sample the unit-sphere octant angularly.
struct SweepSpec {
  std::vector<std::array<double, 3>> triples;  // (mu0, mu1, mu2)

  /// res x res angular grid: azimuth sweeps mu1 -> mu2, elevation sweeps
  /// toward pure mu0.
  static SweepSpec angular_grid(int res = 24);
};

struct SweepPoint {
  double mu0 = 0.0, mu1 = 0.0, mu2 = 0.0;
  DepartureTriplet departure;
  bool converged = false;
};

/// One solver run per triple; non-convergence is recorded, not fatal.
std::vector<SweepPoint> sweep_boundary(const Scenario& scenario, const SweepSpec& spec,
                                       const ChannelParams& cp, const SolveOptions& options = {});

struct ContourPolyline {
  double level_bits = 0.0;
  std::vector<std::array<double, 2>> points;  // (b1, b2), sorted by b1
  bool empty_warning = false;                 // level above the cloud's max b0
};

/// Iso-b0 polylines interpolated along constant-azimuth rays of the cloud.
std::vector<ContourPolyline> contour_b0(const std::vector<SweepPoint>& cloud,
                                        const std::vector<double>& levels);

/// CSV with header mu0,mu1,mu2,b0_bits,b1_bits,b2_bits,converged; values at
/// 12 significant digits so a read/write cycle is string-identical.
void write_points_csv(std::ostream& os, const std::vector<SweepPoint>& points);
std::vector<SweepPoint> read_points_csv(std::istream& is);

/// CSV with header level_bits,b1_bits,b2_bits,seq.
void write_contours_csv(std::ostream& os, const std::vector<ContourPolyline>& contours);

/// Shared numeric formatting for the CSV writers (12 significant digits).
std::string format_sig12(double v);

}  // namespace macsched
