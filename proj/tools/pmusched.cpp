// pmusched: scheduling of PMU phasor-data transmissions.
//
// Subcommands:
//   solve   order one instance file (branch-and-bound or greedy)
//   derive  build an instance from a grid case file
//   bench   run a benchmark suite to CSV
//   verify  sweep random instances against the exhaustive oracle

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmusched/bench.hpp"
#include "pmusched/bnb.hpp"
#include "pmusched/derive.hpp"
#include "pmusched/instance_io.hpp"
#include "pmusched/verify.hpp"

using namespace pmusched;

namespace {

int cmd_solve(const std::string& instance_path, const std::string& solver,
              std::int64_t node_cap, std::int64_t time_cap_ms, std::uint64_t seed, bool trace) {
  Instance inst = validate_instance(load_instance_file(instance_path));
  nlohmann::ordered_json out;
  if (solver == "greedy") {
    Schedule g = greedy_baseline(inst);
    std::vector<int> order1;
    for (int j : g.order) order1.push_back(j + 1);
    out["order"] = order1;
    out["objective"] = g.objective;
    out["lb"] = 0;
    out["nodes"] = 0;
    out["proven_optimal"] = false;
  } else if (solver == "bnb") {
    SolveLimits limits;
    limits.node_cap = node_cap;
    limits.time_cap_ms = time_cap_ms;
    limits.seed = seed;
    if (trace) limits.trace = &std::cerr;
    SolveResult res = solve(inst, limits);
    std::vector<int> order1;
    for (int j : res.best_schedule.order) order1.push_back(j + 1);
    out["order"] = order1;
    out["objective"] = res.best_objective;
    out["lb"] = res.global_lb;
    out["nodes"] = res.nodes_explored;
    out["proven_optimal"] = res.proven_optimal;
  } else {
    throw Error("unknown solver: " + solver);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_derive(const std::string& case_path, std::uint64_t seed, const std::string& out_path,
               std::int64_t place_time_cap_ms) {
  PowerNetwork net = load_case_file(case_path);
  PlacementLimits plimits;
  plimits.time_cap_ms = place_time_cap_ms;
  Placement placement = place_pmus(net, plimits);
  Instance inst = derive_instance(net, placement, seed);
  save_instance_file(inst, out_path);

  nlohmann::ordered_json report;
  report["case"] = case_path;
  report["n"] = static_cast<int>(placement.pmu_buses.size());
  report["buses"] = placement.pmu_buses;
  report["optimal"] = placement.optimal;
  std::cout << report.dump() << "\n";
  return 0;
}

int cmd_bench(const std::string& suite_path, const std::string& out_path) {
  SuiteSpec spec = load_suite_file(suite_path);
  std::vector<BenchRecord> records = run_suite(spec, &std::cerr);
  write_bench_csv(records, out_path);
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  return 0;
}

int cmd_verify(int n_max, int trials, std::uint64_t seed) {
  if (n_max > 9) throw Error("--n-max must be at most 9");
  VerifyParams params;
  params.n_max = n_max;
  params.trials = trials;
  params.seed = seed;
  params.log = &std::cout;
  VerifyOutcome out = verify_sweep(params);
  if (!out.ok()) {
    std::cerr << "first failure: " << out.first_failure << " (reproducer written to "
              << params.reproducer_path << ")\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PMU phasor-data transmission scheduling"};
  app.require_subcommand(1);

  auto* s_solve = app.add_subcommand("solve", "solve an instance file");
  std::string instance_path, solver = "bnb";
  std::int64_t node_cap = -1, time_cap_ms = -1;
  std::uint64_t seed = 1;
  bool trace = false;
  s_solve->add_option("--instance", instance_path, "instance file")->required();
  s_solve->add_option("--solver", solver, "bnb|greedy")->check(CLI::IsMember({"bnb", "greedy"}));
  s_solve->add_option("--node-cap", node_cap, "node limit");
  s_solve->add_option("--time-cap-ms", time_cap_ms, "time limit in milliseconds");
  s_solve->add_option("--seed", seed, "heuristic seed");
  s_solve->add_flag("--trace", trace, "dump relaxation iterations to stderr");

  auto* s_derive = app.add_subcommand("derive", "derive an instance from a case file");
  std::string case_path, out_path;
  std::uint64_t dseed = 1;
  std::int64_t place_cap = 60'000;
  s_derive->add_option("--case", case_path, "grid case file")->required();
  s_derive->add_option("--seed", dseed, "processing-time seed");
  s_derive->add_option("--out", out_path, "output instance file")->required();
  s_derive->add_option("--placement-time-cap-ms", place_cap, "placement search budget");

  auto* s_bench = app.add_subcommand("bench", "run a benchmark suite");
  std::string suite_path, csv_path;
  s_bench->add_option("--suite", suite_path, "suite spec file")->required();
  s_bench->add_option("--out", csv_path, "output CSV")->required();

  auto* s_verify = app.add_subcommand("verify", "check the solver against the oracle");
  int n_max = 8, trials = 200;
  std::uint64_t vseed = 1;
  s_verify->add_option("--n-max", n_max, "largest instance size (<= 9)");
  s_verify->add_option("--trials", trials, "number of random instances");
  s_verify->add_option("--seed", vseed, "sweep seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s_solve->parsed())
      return cmd_solve(instance_path, solver, node_cap, time_cap_ms, seed, trace);
    if (s_derive->parsed()) return cmd_derive(case_path, dseed, out_path, place_cap);
    if (s_bench->parsed()) return cmd_bench(suite_path, csv_path);
    if (s_verify->parsed()) return cmd_verify(n_max, trials, vseed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
