#include "pmusched/placement.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace pmusched {

namespace {

// adjacency as closed-neighborhood bitmasks
struct CoverProblem {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> nb;  // n rows of `words` words
  std::vector<int> by_small_nb;   // vertex order by ascending |N[v]|

  const std::uint64_t* row(int v) const { return nb.data() + static_cast<std::size_t>(v) * words; }

  bool covered_all(const std::vector<std::uint64_t>& covered) const {
    int total = 0;
    for (int w = 0; w < words; ++w) total += std::popcount(covered[w]);
    return total == n;
  }
};

CoverProblem make_problem(const PowerNetwork& net) {
  CoverProblem pr;
  pr.n = static_cast<int>(net.buses.size());
  pr.words = (pr.n + 63) / 64;
  pr.nb.assign(static_cast<std::size_t>(pr.n) * pr.words, 0);
  auto set_bit = [&](int v, int u) { pr.nb[static_cast<std::size_t>(v) * pr.words + u / 64] |= 1ULL << (u % 64); };
  for (int v = 0; v < pr.n; ++v) set_bit(v, v);
  for (const auto& br : net.branches) {
    if (br.status != 1) continue;
    int f = net.bus_index(br.from);
    int t = net.bus_index(br.to);
    if (f == t) continue;
    set_bit(f, t);
    set_bit(t, f);
  }
  std::vector<int> deg(pr.n);
  for (int v = 0; v < pr.n; ++v) {
    int d = 0;
    for (int w = 0; w < pr.words; ++w) d += std::popcount(pr.row(v)[w]);
    deg[v] = d;
  }
  pr.by_small_nb.resize(pr.n);
  std::iota(pr.by_small_nb.begin(), pr.by_small_nb.end(), 0);
  std::stable_sort(pr.by_small_nb.begin(), pr.by_small_nb.end(),
                   [&](int a, int b) { return deg[a] < deg[b]; });
  return pr;
}

bool get_bit(const std::vector<std::uint64_t>& mask, int v) {
  return (mask[v / 64] >> (v % 64)) & 1;
}
void set_bit(std::vector<std::uint64_t>& mask, int v) { mask[v / 64] |= 1ULL << (v % 64); }
void clear_bit(std::vector<std::uint64_t>& mask, int v) { mask[v / 64] &= ~(1ULL << (v % 64)); }

// uncovered vertices with pairwise disjoint closed neighborhoods all need
// distinct dominators
int packing_lower_bound(const CoverProblem& pr, const std::vector<std::uint64_t>& covered) {
  std::vector<std::uint64_t> blocked(pr.words, 0);
  int count = 0;
  for (int v : pr.by_small_nb) {
    if (get_bit(covered, v)) continue;
    const std::uint64_t* r = pr.row(v);
    bool disjoint = true;
    for (int w = 0; w < pr.words && disjoint; ++w)
      if (r[w] & blocked[w]) disjoint = false;
    if (!disjoint) continue;
    ++count;
    for (int w = 0; w < pr.words; ++w) blocked[w] |= r[w];
  }
  return count;
}

std::vector<int> greedy_cover(const CoverProblem& pr) {
  std::vector<std::uint64_t> covered(pr.words, 0);
  std::vector<int> chosen;
  while (!pr.covered_all(covered)) {
    int best = -1, best_gain = -1;
    for (int v = 0; v < pr.n; ++v) {
      int gain = 0;
      const std::uint64_t* r = pr.row(v);
      for (int w = 0; w < pr.words; ++w) gain += std::popcount(r[w] & ~covered[w]);
      if (gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    chosen.push_back(best);
    const std::uint64_t* r = pr.row(best);
    for (int w = 0; w < pr.words; ++w) covered[w] |= r[w];
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

struct Searcher {
  const CoverProblem& pr;
  std::chrono::steady_clock::time_point deadline;
  bool use_deadline = false;
  std::int64_t node_cap = -1;
  std::int64_t nodes = 0;
  bool aborted = false;

  // optimization state
  int best_size = 0;
  std::vector<int> best_set;
  bool feasibility = false;  // stop at the first cover within the budget
  int budget = 0;

  std::vector<std::uint64_t> excluded;
  std::vector<int> chosen;

  explicit Searcher(const CoverProblem& p) : pr(p), excluded(p.words, 0) {}

  bool out_of_budget() {
    if (aborted) return true;
    if (node_cap >= 0 && nodes >= node_cap) return aborted = true;
    if (use_deadline && (nodes & 0x3ff) == 0 &&
        std::chrono::steady_clock::now() >= deadline)
      return aborted = true;
    return false;
  }

  // returns true in feasibility mode once a cover within budget is found
  bool dfs(std::vector<std::uint64_t>& covered) {
    if (out_of_budget()) return false;
    ++nodes;
    if (pr.covered_all(covered)) {
      if (feasibility) return static_cast<int>(chosen.size()) <= budget;
      if (static_cast<int>(chosen.size()) < best_size) {
        best_size = static_cast<int>(chosen.size());
        best_set = chosen;
        std::sort(best_set.begin(), best_set.end());
      }
      return false;
    }
    const int limit = feasibility ? budget : best_size - 1;
    if (static_cast<int>(chosen.size()) + packing_lower_bound(pr, covered) > limit) return false;

    // branch on the uncovered vertex with the fewest allowed dominators
    int pick = -1, pick_cnt = pr.n + 1;
    for (int v = 0; v < pr.n; ++v) {
      if (get_bit(covered, v)) continue;
      int cnt = 0;
      const std::uint64_t* r = pr.row(v);
      for (int w = 0; w < pr.words; ++w) cnt += std::popcount(r[w] & ~excluded[w]);
      if (cnt < pick_cnt) {
        pick = v;
        pick_cnt = cnt;
        if (cnt == 0) break;
      }
    }
    if (pick < 0 || pick_cnt == 0) return false;  // some vertex cannot be dominated

    std::vector<int> doms;
    const std::uint64_t* r = pr.row(pick);
    for (int v = 0; v < pr.n; ++v) {
      bool in_nb = (r[v / 64] >> (v % 64)) & 1;
      if (in_nb && !get_bit(excluded, v)) doms.push_back(v);
    }

    std::vector<std::uint64_t> saved_covered = covered;
    std::vector<int> newly_excluded;
    bool ok = false;
    for (int u : doms) {
      chosen.push_back(u);
      for (int w = 0; w < pr.words; ++w) covered[w] |= pr.row(u)[w];
      ok = dfs(covered);
      covered = saved_covered;
      chosen.pop_back();
      if (ok || aborted) break;
      // later branches must not reuse u, otherwise subtrees overlap
      set_bit(excluded, u);
      newly_excluded.push_back(u);
    }
    for (int u : newly_excluded) clear_bit(excluded, u);
    return ok;
  }
};

}  // namespace

bool covers_all(const PowerNetwork& net, const std::vector<int>& pmu_buses) {
  CoverProblem pr = make_problem(net);
  std::vector<std::uint64_t> covered(pr.words, 0);
  for (int id : pmu_buses) {
    int v = net.bus_index(id);
    if (v < 0) return false;
    for (int w = 0; w < pr.words; ++w) covered[w] |= pr.row(v)[w];
  }
  return pr.covered_all(covered);
}

Placement place_pmus(const PowerNetwork& net, const PlacementLimits& limits) {
  CoverProblem pr = make_problem(net);
  std::vector<int> greedy = greedy_cover(pr);

  Searcher s(pr);
  if (limits.time_cap_ms >= 0) {
    s.use_deadline = true;
    s.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(limits.time_cap_ms);
  }
  s.node_cap = limits.node_cap;

  // stage 1: optimal cardinality
  s.best_size = static_cast<int>(greedy.size());
  s.best_set = greedy;
  {
    std::vector<std::uint64_t> covered(pr.words, 0);
    s.dfs(covered);
  }

  Placement out;
  if (s.aborted) {
    out.pmu_buses.reserve(greedy.size());
    for (int v : greedy) out.pmu_buses.push_back(net.buses[v].id);
    std::sort(out.pmu_buses.begin(), out.pmu_buses.end());
    out.optimal = false;
    return out;
  }
  const int k = s.best_size;
  std::vector<int> fallback = s.best_set;  // an optimal set, pre lex refinement

  // stage 2: lexicographically smallest optimal set, by bus id. Buses are
  // probed in ascending id order; each is kept iff an optimal cover with the
  // kept prefix (and without the dropped ones) still exists.
  std::vector<int> by_id(pr.n);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(),
            [&](int a, int b) { return net.buses[a].id < net.buses[b].id; });

  std::vector<int> prefix;
  std::vector<std::uint64_t> prefix_cov(pr.words, 0);
  s.feasibility = true;
  s.budget = k;
  for (int v : by_id) {
    if (static_cast<int>(prefix.size()) == k) break;
    std::vector<std::uint64_t> covered = prefix_cov;
    for (int w = 0; w < pr.words; ++w) covered[w] |= pr.row(v)[w];
    s.chosen = prefix;
    s.chosen.push_back(v);
    bool feasible = pr.covered_all(covered) ? s.chosen.size() <= static_cast<std::size_t>(k)
                                            : s.dfs(covered);
    if (s.aborted) break;
    if (feasible) {
      prefix.push_back(v);
      prefix_cov = covered;
    } else {
      set_bit(s.excluded, v);
    }
  }

  std::vector<int> pick =
      (!s.aborted && static_cast<int>(prefix.size()) == k) ? prefix : fallback;
  out.pmu_buses.reserve(pick.size());
  for (int v : pick) out.pmu_buses.push_back(net.buses[v].id);
  std::sort(out.pmu_buses.begin(), out.pmu_buses.end());
  out.optimal = true;
  return out;
}

}  // namespace pmusched
