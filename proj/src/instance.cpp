#include "pmusched/instance.hpp"

#include <algorithm>
#include <numeric>

#include "pmusched/rng.hpp"

namespace pmusched {

Cost Instance::total_proc() const {
  Cost t = 0;
  for (Cost v : p) t += v;
  return t;
}

namespace {

// Returns a witness cycle (as a vertex sequence) if one exists.
std::vector<int> find_cycle(int n, const std::vector<std::vector<int>>& succ) {
  std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
  std::vector<int> parent(n, -1);
  std::vector<int> cycle;
  // iterative DFS keeping the explicit path
  for (int root = 0; root < n && cycle.empty(); ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty() && cycle.empty()) {
      auto& [u, it] = stack.back();
      if (it < succ[u].size()) {
        int v = succ[u][it++];
        if (color[v] == 0) {
          color[v] = 1;
          parent[v] = u;
          stack.emplace_back(v, 0);
        } else if (color[v] == 1) {
          // walk the stack back from u to v
          cycle.push_back(v);
          for (int w = u; w != v; w = parent[w]) cycle.push_back(w);
          std::reverse(cycle.begin(), cycle.end());
        }
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return cycle;
}

}  // namespace

PrecedenceRelation::PrecedenceRelation(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), closed_(static_cast<std::size_t>(n) * n, 0), raw_(std::move(edges)) {
  std::vector<std::vector<int>> succ(n);
  for (auto [i, j] : raw_) {
    if (i < 0 || i >= n) throw BadJobIndex(i + 1);
    if (j < 0 || j >= n) throw BadJobIndex(j + 1);
    if (i == j) throw BadJobIndex(i + 1);
    succ[i].push_back(j);
  }
  auto cycle = find_cycle(n, succ);
  if (!cycle.empty()) throw CyclicPrecedence(cycle);

  // closure by DFS from each vertex; instances stay small enough for this
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    stack.assign(1, s);
    std::vector<std::uint8_t> seen(n, 0);
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : succ[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          closed_[static_cast<std::size_t>(s) * n + v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
}

int PrecedenceRelation::closed_pair_count() const {
  int c = 0;
  for (auto v : closed_) c += v;
  return c;
}

PrecedenceRelation transitive_closure(int n, const std::vector<std::pair<int, int>>& edges) {
  return PrecedenceRelation(n, edges);
}

Instance validate_instance(Instance raw) {
  for (int j = 0; j < raw.n; ++j) {
    if (raw.p[j] <= 0) throw NonPositiveProcTime(j);
    if (raw.w[j] < 0)
      throw Error("weight of job " + std::to_string(j + 1) + " is negative");
  }
  PrecedenceRelation check(raw.n, raw.prec);  // throws on cycles / bad indices
  (void)check;
  return raw;
}

Schedule evaluate_schedule(const Instance& inst, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != inst.n) throw NotAPermutation();
  std::vector<std::uint8_t> seen(inst.n, 0);
  for (int j : order) {
    if (j < 0 || j >= inst.n || seen[j]) throw NotAPermutation();
    seen[j] = 1;
  }
  Schedule s;
  s.order = order;
  s.completions.resize(inst.n);
  Cost clock = 0;
  for (int j : order) {
    clock += inst.p[j];
    s.completions[j] = clock;
    s.objective += inst.w[j] * clock;
  }
  s.frame_length = clock;
  return s;
}

bool is_feasible(const PrecedenceRelation& prec, const std::vector<int>& order) {
  const int n = prec.size();
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && prec.closed(i, j) && pos[i] > pos[j]) return false;
  return true;
}

bool is_feasible(const Instance& inst, const std::vector<int>& order) {
  return is_feasible(PrecedenceRelation(inst.n, inst.prec), order);
}

Schedule wspt_order(const Instance& inst) {
  if (!inst.prec.empty()) throw HasPrecedence();
  std::vector<int> order(inst.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    // w_a/p_a > w_b/p_b without division; ties by smaller index
    Cost lhs = inst.w[a] * inst.p[b];
    Cost rhs = inst.w[b] * inst.p[a];
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  return evaluate_schedule(inst, order);
}

Schedule brute_force_optimal(const Instance& inst) {
  constexpr int kCap = 10;
  if (inst.n > kCap) throw TooLarge(inst.n, kCap);
  PrecedenceRelation prec(inst.n, inst.prec);
  std::vector<int> perm(inst.n);
  std::iota(perm.begin(), perm.end(), 0);
  bool found = false;
  Schedule best;
  do {
    if (!is_feasible(prec, perm)) continue;
    Schedule cand = evaluate_schedule(inst, perm);
    // lexicographic enumeration + strict improvement = lexicographically
    // smallest optimal order
    if (!found || cand.objective < best.objective) {
      best = cand;
      found = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Instance random_instance(std::uint64_t seed, int n, double density, Cost weight_max) {
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  inst.p.resize(n);
  inst.w.resize(n);
  for (int j = 0; j < n; ++j) inst.p[j] = rng.uniform_int(1, 50);
  // edges only from lower to higher index, so the result is always acyclic
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform01() < density) inst.prec.emplace_back(i, j);
  for (int j = 0; j < n; ++j) inst.w[j] = rng.uniform_int(1, weight_max);
  return inst;
}

FrameStats frame_stats(const Instance& inst) {
  FrameStats fs{};
  fs.frame_length = inst.total_proc();
  Cost g = std::gcd(fs.frame_length, static_cast<Cost>(inst.n));
  fs.slot_num = fs.frame_length / g;
  fs.slot_den = inst.n / g;
  return fs;
}

}  // namespace pmusched
