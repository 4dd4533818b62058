#pragma once

#include <istream>
#include <string>

#include "macsched/channel.hpp"
#include "macsched/scenario.hpp"

namespace macsched {

struct ScenarioFile {
  Scenario scenario;
  ChannelParams channel{1.0, 1.0, 1.0};
};

/// Parse error carrying the JSON field that failed validation.
struct ScenarioParseError : std::runtime_error {
  explicit ScenarioParseError(const std::string& field, const std::string& what)
      : std::runtime_error("scenario field '" + field + "': " + what), field(field) {}
  std::string field;
};

/// Reads the scenario JSON schema: {"node1": [{"t_s", "e_mJ"}...], "node2":
/// [...], "t_final_s", "channel": {"w_hz", "n0_w_per_hz", "h"}}. Energies are
/// converted from mJ to J at this boundary.
ScenarioFile load_scenario(std::istream& in);
ScenarioFile load_scenario_file(const std::string& path);

}  // namespace macsched
