#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pmusched/instance.hpp"

namespace pmusched {

struct SuiteCase {
  std::string path;  // case file, solved through the grid pipeline
  std::uint64_t seed = 1;
};

struct SuiteGrid {
  std::vector<int> n;
  std::vector<double> density;
  int reps = 1;
  std::uint64_t seed = 1;
  Cost weight_max = 10;
};

struct SuiteSpec {
  std::string suite_id;
  std::vector<SuiteCase> cases;
  std::vector<SuiteGrid> grids;
  std::int64_t node_cap = -1;
  std::int64_t time_cap_ms = -1;
};

struct BenchRecord {
  std::string suite_id;
  std::string source;
  int n = 0;
  double density = 0;
  std::uint64_t seed = 0;
  std::string solver;  // bnb | greedy
  Cost objective = 0;
  Cost lb = 0;
  std::int64_t nodes = 0;
  std::int64_t time_ms = 0;
  bool optimal = false;
};

SuiteSpec load_suite_file(const std::string& path);

// Runs bnb and greedy on every suite instance; failures are logged and the
// run continues.
std::vector<BenchRecord> run_suite(const SuiteSpec& spec, std::ostream* log = nullptr);

// CSV with one row per record, then mean/max aggregate rows per
// (source kind, n, density, solver) group. Also writes <out>.plot.csv with
// n vs mean time and mean nodes per solver.
void write_bench_csv(const std::vector<BenchRecord>& records, const std::string& out_path);

std::vector<BenchRecord> parse_bench_csv(const std::string& text);  // record rows only

}  // namespace pmusched
