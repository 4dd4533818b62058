#include "macsched/scenario.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <string>

namespace macsched {

namespace {

std::vector<HarvestEvent> normalize(std::vector<HarvestEvent> events, double t_final,
                                    const char* label) {
  for (const auto& ev : events) {
    if (ev.energy_j < 0.0)
      throw std::invalid_argument(std::string("Scenario: negative energy for ") + label);
    if (ev.time_s < 0.0 || ev.time_s >= t_final)
      throw std::invalid_argument(std::string("Scenario: event time outside [0, t_final) for ") +
                                  label);
  }
  std::sort(events.begin(), events.end(),
            [](const HarvestEvent& a, const HarvestEvent& b) { return a.time_s < b.time_s; });
  // Merge events landing on the same instant.
  std::vector<HarvestEvent> merged;
  for (const auto& ev : events) {
    if (!merged.empty() && merged.back().time_s == ev.time_s)
      merged.back().energy_j += ev.energy_j;
    else
      merged.push_back(ev);
  }
  return merged;
}

}  // namespace

Scenario Scenario::build(std::vector<HarvestEvent> node1, std::vector<HarvestEvent> node2,
                         double t_final) {
  if (!(t_final > 0.0)) throw std::invalid_argument("Scenario: t_final must be > 0");
  if (node1.empty() && node2.empty())
    throw std::invalid_argument("Scenario: no harvest events");

  Scenario s;
  s.t_final_ = t_final;
  s.events1_ = normalize(std::move(node1), t_final, "node1");
  s.events2_ = normalize(std::move(node2), t_final, "node2");

  for (const auto& ev : s.events1_) s.boundaries_.push_back(ev.time_s);
  for (const auto& ev : s.events2_) s.boundaries_.push_back(ev.time_s);
  std::sort(s.boundaries_.begin(), s.boundaries_.end());
  s.boundaries_.erase(std::unique(s.boundaries_.begin(), s.boundaries_.end()),
                      s.boundaries_.end());

  const std::size_t n = s.boundaries_.size();
  s.lengths_.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) s.lengths_[i] = s.boundaries_[i + 1] - s.boundaries_[i];
  s.lengths_[n - 1] = t_final - s.boundaries_[n - 1];

  auto accumulate = [&](const std::vector<HarvestEvent>& events, std::vector<double>& cum,
                        std::vector<double>& arrivals) {
    cum.assign(n, 0.0);
    arrivals.assign(n, 0.0);
    for (const auto& ev : events) {
      auto it = std::lower_bound(s.boundaries_.begin(), s.boundaries_.end(), ev.time_s);
      arrivals[static_cast<std::size_t>(it - s.boundaries_.begin())] += ev.energy_j;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += arrivals[i];
      cum[i] = total;
    }
  };
  accumulate(s.events1_, s.cum1_, s.arrivals1_);
  accumulate(s.events2_, s.cum2_, s.arrivals2_);
  return s;
}

Scenario Scenario::swapped_nodes() const {
  Scenario s = *this;
  std::swap(s.events1_, s.events2_);
  std::swap(s.cum1_, s.cum2_);
  std::swap(s.arrivals1_, s.arrivals2_);
  return s;
}

std::size_t Scenario::fingerprint() const {
  std::size_t seed = 0x9e3779b97f4a7c15ull;
  auto mix = [&seed](double v) {
    std::size_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(v));
    seed ^= bits + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  };
  mix(t_final_);
  for (const auto* evs : {&events1_, &events2_}) {
    mix(static_cast<double>(evs->size()));
    for (const auto& ev : *evs) {
      mix(ev.time_s);
      mix(ev.energy_j);
    }
  }
  return seed;
}

}  // namespace macsched
