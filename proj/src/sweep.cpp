#include "macsched/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace macsched {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SweepSpec SweepSpec::angular_grid(int res) {
  if (res < 2) throw std::invalid_argument("angular_grid: resolution must be >= 2");
  SweepSpec spec;
  spec.triples.reserve(static_cast<std::size_t>(res) * res);
  for (int ei = 0; ei < res; ++ei) {
    const double elev = 0.5 * kPi * ei / (res - 1);
    const double c = std::cos(elev);
    const double mu0 = std::sin(elev);
    for (int ai = 0; ai < res; ++ai) {
      const double azim = 0.5 * kPi * ai / (res - 1);
      spec.triples.push_back({mu0, c * std::cos(azim), c * std::sin(azim)});
    }
  }
  return spec;
}

std::vector<SweepPoint> sweep_boundary(const Scenario& scenario, const SweepSpec& spec,
                                       const ChannelParams& cp, const SolveOptions& options) {
  std::vector<SweepPoint> out;
  out.reserve(spec.triples.size());
  for (const auto& t : spec.triples) {
    const RewardWeights mu = RewardWeights::make(t[0], t[1], t[2]);
    const SolveResult r = schedule(scenario, mu, cp, options);
    out.push_back({t[0], t[1], t[2], r.departure, r.converged});
  }
  return out;
}

std::vector<ContourPolyline> contour_b0(const std::vector<SweepPoint>& cloud,
                                        const std::vector<double>& levels) {
  // Rays of constant azimuth in the (mu1, mu2) plane, ordered by elevation
  // toward pure mu0; b0 grows monotonically along each ray.
  std::map<long long, std::vector<const SweepPoint*>> rays;
  double max_b0 = 0.0;
  for (const SweepPoint& p : cloud) {
    if (!p.converged) continue;
    const double azim = std::atan2(p.mu2, p.mu1);
    rays[static_cast<long long>(std::llround(azim * 1e7))].push_back(&p);
    max_b0 = std::max(max_b0, p.departure.b0);
  }
  auto elevation = [](const SweepPoint& p) {
    return std::atan2(p.mu0, std::hypot(p.mu1, p.mu2));
  };
  for (auto& [key, ray] : rays)
    std::sort(ray.begin(), ray.end(), [&](const SweepPoint* a, const SweepPoint* b) {
      return elevation(*a) < elevation(*b);
    });

  std::vector<ContourPolyline> out;
  for (const double level : levels) {
    ContourPolyline poly;
    poly.level_bits = level;
    const double snap = 1e-9 * std::max(max_b0, 1.0);
    for (const auto& [key, ray] : rays) {
      bool hit = false;
      for (std::size_t i = 0; i < ray.size() && !hit; ++i) {
        if (std::abs(ray[i]->departure.b0 - level) <= snap) {
          poly.points.push_back({ray[i]->departure.b1, ray[i]->departure.b2});
          hit = true;
        }
      }
      for (std::size_t i = 0; i + 1 < ray.size() && !hit; ++i) {
        const double a = ray[i]->departure.b0, b = ray[i + 1]->departure.b0;
        if ((a - level) * (b - level) < 0.0 && a != b) {
          const double s = (level - a) / (b - a);
          const DepartureTriplet& da = ray[i]->departure;
          const DepartureTriplet& db = ray[i + 1]->departure;
          poly.points.push_back(
              {da.b1 + s * (db.b1 - da.b1), da.b2 + s * (db.b2 - da.b2)});
          hit = true;
        }
      }
    }
    std::sort(poly.points.begin(), poly.points.end());
    poly.empty_warning = poly.points.empty() && level > max_b0;
    out.push_back(std::move(poly));
  }
  return out;
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_points_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "mu0,mu1,mu2,b0_bits,b1_bits,b2_bits,converged\n";
  for (const SweepPoint& p : points) {
    os << format_sig12(p.mu0) << ',' << format_sig12(p.mu1) << ',' << format_sig12(p.mu2)
       << ',' << format_sig12(p.departure.b0) << ',' << format_sig12(p.departure.b1) << ','
       << format_sig12(p.departure.b2) << ',' << (p.converged ? 1 : 0) << '\n';
  }
}

std::vector<SweepPoint> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "mu0,mu1,mu2,b0_bits,b1_bits,b2_bits,converged")
    throw std::runtime_error("points CSV: unexpected header");
  std::vector<SweepPoint> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double f[6];
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("points CSV: short row at line " + std::to_string(lineno));
      f[i] = std::stod(cell);
    }
    if (!std::getline(ss, cell, ','))
      throw std::runtime_error("points CSV: short row at line " + std::to_string(lineno));
    SweepPoint p;
    p.mu0 = f[0];
    p.mu1 = f[1];
    p.mu2 = f[2];
    p.departure = {f[3], f[4], f[5]};
    p.converged = std::stoi(cell) != 0;
    out.push_back(p);
  }
  return out;
}

void write_contours_csv(std::ostream& os, const std::vector<ContourPolyline>& contours) {
  os << "level_bits,b1_bits,b2_bits,seq\n";
  for (const ContourPolyline& c : contours) {
    int seq = 0;
    for (const auto& pt : c.points)
      os << format_sig12(c.level_bits) << ',' << format_sig12(pt[0]) << ','
         << format_sig12(pt[1]) << ',' << seq++ << '\n';
  }
}

}  // namespace macsched
