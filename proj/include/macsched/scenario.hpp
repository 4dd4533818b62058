#pragma once

#include <cstddef>
#include <vector>

namespace macsched {

struct HarvestEvent {
  double time_s;
  double energy_j;
};

/// Harvesting timeline for the two nodes. Interval n (0-based) spans
/// [boundary(n), boundary(n+1)), the last one ending at t_final. Boundaries
/// are the sorted union of both nodes' event times; energy harvested at a
/// boundary is usable from that boundary on.
class Scenario {
 public:
  static Scenario build(std::vector<HarvestEvent> node1, std::vector<HarvestEvent> node2,
                        double t_final);

  std::size_t intervals() const { return lengths_.size(); }
  double t_final() const { return t_final_; }
  double boundary(std::size_t n) const { return boundaries_[n]; }
  double length(std::size_t n) const { return lengths_[n]; }

  /// E_k under-bar: total energy node k has harvested at or before boundary n.
  double cumulative_energy(int node, std::size_t n) const {
    return (node == 1 ? cum1_ : cum2_)[n];
  }
  /// Energy arriving exactly at boundary n.
  double arrival(int node, std::size_t n) const {
    return (node == 1 ? arrivals1_ : arrivals2_)[n];
  }
  double total_energy(int node) const {
    return (node == 1 ? cum1_ : cum2_).back();
  }

  const std::vector<HarvestEvent>& events(int node) const {
    return node == 1 ? events1_ : events2_;
  }

  Scenario swapped_nodes() const;

  /// Stable fingerprint of the timeline, used to pair solver and oracle runs.
  std::size_t fingerprint() const;

 private:
  std::vector<HarvestEvent> events1_, events2_;  // sorted, duplicates merged
  double t_final_ = 0.0;
  std::vector<double> boundaries_;
  std::vector<double> lengths_;
  std::vector<double> cum1_, cum2_;
  std::vector<double> arrivals1_, arrivals2_;
};

}  // namespace macsched
