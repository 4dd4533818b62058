#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "macsched/baselines.hpp"
#include "macsched/oracle.hpp"
#include "macsched/scenario_io.hpp"
#include "macsched/sweep.hpp"
#include "macsched/waterfill.hpp"

namespace {

using nlohmann::json;
using namespace macsched;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;

RewardWeights parse_mu(const std::string& text) {
  double mu0, mu1, mu2;
  char c1, c2;
  std::istringstream ss(text);
  if (!(ss >> mu0 >> c1 >> mu1 >> c2 >> mu2) || c1 != ',' || c2 != ',')
    throw std::invalid_argument("--mu expects mu0,mu1,mu2");
  return RewardWeights::make(mu0, mu1, mu2);
}

json departure_json(const DepartureTriplet& b) {
  return json{{"b0_bits", b.b0},   {"b1_bits", b.b1},   {"b2_bits", b.b2},
              {"b0_mbit", b.b0 / 1e6}, {"b1_mbit", b.b1 / 1e6}, {"b2_mbit", b.b2 / 1e6}};
}

json schedule_json(const PowerSchedule& s) {
  json j;
  j["p0_w"] = s.p0;
  j["p1_w"] = s.p1;
  j["p2_w"] = s.p2;
  j["rho"] = s.rho;
  return j;
}

int run_solve(const std::string& scenario_path, const std::string& mu_text, bool trace) {
  const ScenarioFile sf = load_scenario_file(scenario_path);
  const RewardWeights mu = parse_mu(mu_text);
  SolveOptions opts;
  if (trace) opts.trace = &std::cerr;
  const SolveResult r = schedule(sf.scenario, mu, sf.channel, opts);
  json out;
  out["departure"] = departure_json(r.departure);
  out["schedule"] = schedule_json(r.schedule_original());
  out["converged"] = r.converged;
  out["iterations"] = r.state.iterations;
  out["max_mismatch"] = r.state.max_mismatch;
  std::cout << out.dump(2) << '\n';
  return r.converged ? kExitOk : kExitNotConverged;
}

int run_sweep(const std::string& scenario_path, int grid_res, const std::string& out_path) {
  const ScenarioFile sf = load_scenario_file(scenario_path);
  const SweepSpec spec = SweepSpec::angular_grid(grid_res);
  const std::vector<SweepPoint> points = sweep_boundary(sf.scenario, spec, sf.channel);
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  write_points_csv(os, points);
  for (const SweepPoint& p : points)
    if (!p.converged) return kExitNotConverged;
  return kExitOk;
}

int run_contour(const std::string& points_path, const std::string& levels_text,
                const std::string& out_path) {
  std::ifstream is(points_path);
  if (!is) throw std::runtime_error("cannot open points file " + points_path);
  const std::vector<SweepPoint> points = read_points_csv(is);
  std::vector<double> levels;
  std::istringstream ss(levels_text);
  std::string cell;
  while (std::getline(ss, cell, ',')) levels.push_back(std::stod(cell));
  if (levels.empty()) throw std::invalid_argument("--levels expects L1[,L2,...]");
  const auto contours = contour_b0(points, levels);
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  write_contours_csv(os, contours);
  for (const auto& c : contours)
    if (c.empty_warning)
      std::cerr << "warning: level " << c.level_bits << " exceeds the cloud's max b0\n";
  return kExitOk;
}

int run_baseline(const std::string& scenario_path, const std::string& policy,
                 const std::string& mu_text) {
  const ScenarioFile sf = load_scenario_file(scenario_path);
  const RewardWeights mu = parse_mu(mu_text);
  SolveResult r;
  if (policy == "no-s")
    r = no_scheduling(sf.scenario, mu, sf.channel);
  else if (policy == "uni-s")
    r = uniform_scheduling(sf.scenario, mu, sf.channel);
  else
    throw std::invalid_argument("--policy must be no-s or uni-s");
  json out;
  out["policy"] = policy;
  out["departure"] = departure_json(r.departure);
  out["schedule"] = schedule_json(r.schedule_original());
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_oracle_check(const std::string& scenario_path, const std::string& mu_text,
                     const std::string& grid_text, double slack) {
  const ScenarioFile sf = load_scenario_file(scenario_path);
  const RewardWeights mu = parse_mu(mu_text);
  GridSpec grid;
  if (!grid_text.empty()) {
    int e, p, r;
    char c1, c2;
    std::istringstream ss(grid_text);
    if (!(ss >> e >> c1 >> p >> c2 >> r) || c1 != ',' || c2 != ',')
      throw std::invalid_argument("--grid expects energy_steps,power_steps,refinement_rounds");
    grid = GridSpec::make(e, p, r);
  }
  const SolveResult wf = schedule(sf.scenario, mu, sf.channel);
  const OracleResult oracle = brute_force_schedule(sf.scenario, mu, sf.channel, grid);
  const CompareReport rep = compare(wf, oracle, slack);
  json out;
  out["pass"] = rep.pass;
  out["oracle_objective"] = rep.oracle_objective;
  out["waterfill_objective"] = rep.waterfill_objective;
  out["delta"] = rep.delta;
  out["slack_abs"] = rep.slack_abs;
  out["delta_b0_bits"] = rep.db0;
  out["delta_b1_bits"] = rep.db1;
  out["delta_b2_bits"] = rep.db2;
  out["waterfill_converged"] = wf.converged;
  std::cout << out.dump(2) << '\n';
  return rep.pass ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user MAC energy-harvesting schedule optimizer"};
  app.require_subcommand(1);

  std::string scenario_path, mu_text = "1,1,1", policy = "no-s";
  std::string points_path, levels_text, out_path, grid_text;
  int grid_res = 24;
  double slack = 0.01;
  bool trace = false;

  auto* solve = app.add_subcommand("solve", "Optimal schedule for one reward triple");
  solve->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  solve->add_option("--mu", mu_text, "Reward triple mu0,mu1,mu2")->required();
  solve->add_flag("--trace", trace, "Emit per-transfer trace JSON-lines on stderr");

  auto* sweep = app.add_subcommand("sweep", "Angular reward-grid sweep to CSV");
  sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--grid-res", grid_res, "Angular resolution per axis");
  sweep->add_option("--out", out_path, "Output points CSV")->required();

  auto* contour = app.add_subcommand("contour", "Constant-b0 contours from a sweep CSV");
  contour->add_option("--points", points_path, "Points CSV from sweep")->required();
  contour->add_option("--levels", levels_text, "Comma-separated b0 levels in bits")->required();
  contour->add_option("--out", out_path, "Output contours CSV")->required();

  auto* baseline = app.add_subcommand("baseline", "Reference policy departure");
  baseline->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  baseline->add_option("--policy", policy, "no-s or uni-s")->required();
  baseline->add_option("--mu", mu_text, "Reward triple mu0,mu1,mu2");

  auto* oracle = app.add_subcommand("oracle-check", "Brute-force check (N <= 3)");
  oracle->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  oracle->add_option("--mu", mu_text, "Reward triple mu0,mu1,mu2")->required();
  oracle->add_option("--grid", grid_text, "energy_steps,power_steps,refinement_rounds");
  oracle->add_option("--slack", slack, "Pass slack as a fraction of the oracle objective");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(scenario_path, mu_text, trace);
    if (sweep->parsed()) return run_sweep(scenario_path, grid_res, out_path);
    if (contour->parsed()) return run_contour(points_path, levels_text, out_path);
    if (baseline->parsed()) return run_baseline(scenario_path, policy, mu_text);
    if (oracle->parsed()) return run_oracle_check(scenario_path, mu_text, grid_text, slack);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
