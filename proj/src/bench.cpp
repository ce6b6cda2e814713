#include "pmusched/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pmusched/bnb.hpp"
#include "pmusched/derive.hpp"

namespace pmusched {

SuiteSpec load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open suite file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad suite file: ") + e.what());
  }
  SuiteSpec spec;
  try {
    spec.suite_id = j.value("suite_id", "suite");
    for (const auto& c : j.value("cases", nlohmann::json::array())) {
      SuiteCase sc;
      sc.path = c.at("path").get<std::string>();
      sc.seed = c.value("seed", 1);
      spec.cases.push_back(std::move(sc));
    }
    for (const auto& g : j.value("random", nlohmann::json::array())) {
      SuiteGrid sg;
      sg.n = g.at("n").get<std::vector<int>>();
      sg.density = g.at("density").get<std::vector<double>>();
      sg.reps = g.value("reps", 1);
      sg.seed = g.value("seed", 1);
      sg.weight_max = g.value("weight_max", 10);
      spec.grids.push_back(std::move(sg));
    }
    spec.node_cap = j.value("node_cap", -1);
    spec.time_cap_ms = j.value("time_cap_ms", -1);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad suite file: ") + e.what());
  }
  return spec;
}

namespace {

void run_instance(const SuiteSpec& spec, const Instance& inst, const std::string& source,
                  double density, std::uint64_t seed, std::vector<BenchRecord>& out) {
  BenchRecord base;
  base.suite_id = spec.suite_id;
  base.source = source;
  base.n = inst.n;
  base.density = density;
  base.seed = seed;

  SolveLimits limits;
  limits.node_cap = spec.node_cap;
  limits.time_cap_ms = spec.time_cap_ms;
  SolveResult res = solve(inst, limits);
  BenchRecord rb = base;
  rb.solver = "bnb";
  rb.objective = res.best_objective;
  rb.lb = res.global_lb;
  rb.nodes = res.nodes_explored;
  rb.time_ms = res.wall_time_ms;
  rb.optimal = res.proven_optimal;
  out.push_back(rb);

  auto t0 = std::chrono::steady_clock::now();
  Schedule g = greedy_baseline(inst);
  BenchRecord rg = base;
  rg.solver = "greedy";
  rg.objective = g.objective;
  rg.lb = 0;
  rg.nodes = 0;
  rg.time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  rg.optimal = false;
  out.push_back(rg);
}

}  // namespace

std::vector<BenchRecord> run_suite(const SuiteSpec& spec, std::ostream* log) {
  std::vector<BenchRecord> records;
  for (const auto& c : spec.cases) {
    try {
      PowerNetwork net = load_case_file(c.path);
      Instance inst = derive_instance(net, c.seed);
      // a derived chain relates every pair of jobs
      run_instance(spec, inst, "case:" + c.path, 1.0, c.seed, records);
    } catch (const Error& e) {
      if (log) *log << "bench: case " << c.path << " failed: " << e.what() << "\n";
    }
  }
  for (const auto& g : spec.grids) {
    std::uint64_t counter = 0;
    for (int n : g.n)
      for (double d : g.density)
        for (int rep = 0; rep < g.reps; ++rep, ++counter) {
          std::uint64_t seed = g.seed + counter;
          try {
            Instance inst = random_instance(seed, n, d, g.weight_max);
            std::ostringstream src;
            src << "random:n=" << n << ",d=" << d << ",rep=" << rep;
            run_instance(spec, inst, src.str(), d, seed, records);
          } catch (const Error& e) {
            if (log) *log << "bench: random n=" << n << " seed=" << seed
                          << " failed: " << e.what() << "\n";
          }
        }
  }
  return records;
}

namespace {

// shortest representation that parses back to the same double
std::string fmt_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_bench_csv(const std::vector<BenchRecord>& records, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write csv: " + out_path);
  out << "suite_id,source,n,density,seed,solver,objective,lb,nodes,time_ms,optimal\n";
  for (const auto& r : records) {
    out << csv_escape(r.suite_id) << ',' << csv_escape(r.source) << ',' << r.n << ','
        << fmt_double(r.density) << ',' << r.seed << ',' << r.solver << ',' << r.objective << ','
        << r.lb << ',' << r.nodes << ',' << r.time_ms << ',' << (r.optimal ? 1 : 0) << '\n';
  }

  // aggregates per (n, density, solver)
  struct Agg {
    double obj = 0, lb = 0, nodes = 0, time = 0, opt = 0;
    double max_nodes = 0, max_time = 0, max_obj = 0;
    int count = 0;
  };
  std::map<std::tuple<int, double, std::string>, Agg> groups;
  for (const auto& r : records) {
    Agg& a = groups[{r.n, r.density, r.solver}];
    a.obj += static_cast<double>(r.objective);
    a.lb += static_cast<double>(r.lb);
    a.nodes += static_cast<double>(r.nodes);
    a.time += static_cast<double>(r.time_ms);
    a.opt += r.optimal ? 1 : 0;
    a.max_nodes = std::max(a.max_nodes, static_cast<double>(r.nodes));
    a.max_time = std::max(a.max_time, static_cast<double>(r.time_ms));
    a.max_obj = std::max(a.max_obj, static_cast<double>(r.objective));
    ++a.count;
  }
  std::string suite = records.empty() ? "suite" : records.front().suite_id;
  for (const auto& [key, a] : groups) {
    const auto& [n, d, solver] = key;
    out << suite << ",mean(" << solver << ")," << n << ',' << d << ",,aggregate,"
        << a.obj / a.count << ',' << a.lb / a.count << ',' << a.nodes / a.count << ','
        << a.time / a.count << ',' << a.opt / a.count << '\n';
    out << suite << ",max(" << solver << ")," << n << ',' << d << ",,aggregate," << a.max_obj
        << ',' << "" << ',' << a.max_nodes << ',' << a.max_time << ',' << "" << '\n';
  }

  // plot data: n vs mean time / mean nodes per solver
  std::ofstream plot(out_path + ".plot.csv", std::ios::binary);
  struct P {
    double nodes = 0, time = 0;
    int count = 0;
  };
  std::map<std::pair<std::string, int>, P> curve;
  for (const auto& r : records) {
    P& p = curve[{r.solver, r.n}];
    p.nodes += static_cast<double>(r.nodes);
    p.time += static_cast<double>(r.time_ms);
    ++p.count;
  }
  plot << "solver,n,mean_time_ms,mean_nodes\n";
  for (const auto& [key, p] : curve)
    plot << key.first << ',' << key.second << ',' << p.time / p.count << ','
         << p.nodes / p.count << '\n';
}

std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::vector<BenchRecord> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"')
          quoted = false;
        else
          cur += c;
      } else if (c == '"')
        quoted = true;
      else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    fields.push_back(cur);
    if (fields.size() != 11 || fields[5] == "aggregate") continue;
    BenchRecord r;
    r.suite_id = fields[0];
    r.source = fields[1];
    r.n = std::stoi(fields[2]);
    r.density = std::stod(fields[3]);
    r.seed = std::stoull(fields[4]);
    r.solver = fields[5];
    r.objective = std::stoll(fields[6]);
    r.lb = std::stoll(fields[7]);
    r.nodes = std::stoll(fields[8]);
    r.time_ms = std::stoll(fields[9]);
    r.optimal = fields[10] == "1";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pmusched
