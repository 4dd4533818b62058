#include "macsched/scenario_io.hpp"

#include <fstream>
#include <json.hpp>
#include <vector>

namespace macsched {

namespace {

using nlohmann::json;

double require_number(const json& obj, const std::string& field) {
  if (!obj.contains(field)) throw ScenarioParseError(field, "missing");
  const json& v = obj.at(field);
  if (!v.is_number()) throw ScenarioParseError(field, "not a number");
  return v.get<double>();
}

std::vector<HarvestEvent> parse_events(const json& root, const std::string& field) {
  if (!root.contains(field)) throw ScenarioParseError(field, "missing");
  const json& arr = root.at(field);
  if (!arr.is_array()) throw ScenarioParseError(field, "not an array");
  std::vector<HarvestEvent> events;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!arr[i].is_object()) throw ScenarioParseError(where, "not an object");
    HarvestEvent ev;
    ev.time_s = require_number(arr[i], "t_s");
    ev.energy_j = require_number(arr[i], "e_mJ") * 1e-3;
    if (ev.time_s < 0.0) throw ScenarioParseError(where + ".t_s", "negative");
    if (ev.energy_j < 0.0) throw ScenarioParseError(where + ".e_mJ", "negative");
    events.push_back(ev);
  }
  return events;
}

}  // namespace

ScenarioFile load_scenario(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError("<document>", e.what());
  }
  if (!root.is_object()) throw ScenarioParseError("<document>", "not an object");

  ScenarioFile out;
  auto node1 = parse_events(root, "node1");
  auto node2 = parse_events(root, "node2");
  const double t_final = require_number(root, "t_final_s");
  if (!(t_final > 0.0)) throw ScenarioParseError("t_final_s", "must be > 0");

  if (!root.contains("channel")) throw ScenarioParseError("channel", "missing");
  const json& ch = root.at("channel");
  if (!ch.is_object()) throw ScenarioParseError("channel", "not an object");
  try {
    out.channel = ChannelParams::make(require_number(ch, "w_hz"),
                                      require_number(ch, "n0_w_per_hz"),
                                      require_number(ch, "h"));
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError("channel", e.what());
  }

  try {
    out.scenario = Scenario::build(std::move(node1), std::move(node2), t_final);
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError("node1/node2", e.what());
  }
  return out;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("<file>", "cannot open " + path);
  return load_scenario(in);
}

}  // namespace macsched
