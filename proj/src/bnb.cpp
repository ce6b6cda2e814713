#include "pmusched/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "pmusched/rng.hpp"

namespace pmusched {

Schedule initial_heuristic(const Instance& inst, const PrecedenceRelation& prec,
                           std::uint64_t seed) {
  const int n = inst.n;
  Rng rng(seed);
  std::vector<int> pending(n, 0);  // unscheduled predecessors per job
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && prec.closed(i, j)) ++pending[j];
  std::vector<int> available;
  std::vector<std::uint8_t> done(n, 0);
  for (int j = 0; j < n; ++j)
    if (pending[j] == 0) available.push_back(j);
  std::vector<int> order;
  order.reserve(n);
  while (!available.empty()) {
    std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, available.size() - 1));
    int u = available[k];
    available.erase(available.begin() + k);
    order.push_back(u);
    done[u] = 1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && prec.closed(u, v) && --pending[v] == 0) available.push_back(v);
  }
  return evaluate_schedule(inst, order);
}

namespace {

Cost order_objective(const Instance& inst, const std::vector<int>& order) {
  Cost clock = 0, obj = 0;
  for (int j : order) {
    clock += inst.p[j];
    obj += inst.w[j] * clock;
  }
  return obj;
}

}  // namespace

Schedule improve_schedule(const Instance& inst, const PrecedenceRelation& prec,
                          const Schedule& s) {
  const int n = inst.n;
  std::vector<int> order = s.order;
  Cost obj = s.objective;

  bool improved = true;
  while (improved) {
    improved = false;
    // maximal runs where each adjacent pair is precedence-linked
    int start = 0;
    for (int end = 0; end < n && !improved; ++end) {
      bool linked = end + 1 < n && prec.closed(order[end], order[end + 1]);
      if (linked) continue;
      // group occupies positions [start, end]
      std::vector<int> rest;
      rest.reserve(n - (end - start + 1));
      rest.insert(rest.end(), order.begin(), order.begin() + start);
      rest.insert(rest.end(), order.begin() + end + 1, order.end());
      for (int ins = 0; ins <= static_cast<int>(rest.size()); ++ins) {
        if (ins == start) continue;  // same position
        std::vector<int> cand;
        cand.reserve(n);
        cand.insert(cand.end(), rest.begin(), rest.begin() + ins);
        cand.insert(cand.end(), order.begin() + start, order.begin() + end + 1);
        cand.insert(cand.end(), rest.begin() + ins, rest.end());
        if (!is_feasible(prec, cand)) continue;
        Cost cobj = order_objective(inst, cand);
        if (cobj < obj) {
          order = std::move(cand);
          obj = cobj;
          improved = true;
          break;
        }
      }
      start = end + 1;
    }
  }
  return evaluate_schedule(inst, order);
}

Schedule greedy_baseline(const Instance& inst, const PrecedenceRelation& prec) {
  const int n = inst.n;
  std::vector<int> pending(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && prec.closed(i, j)) ++pending[j];
  std::vector<std::uint8_t> done(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int j = 0; j < n; ++j) {
      if (done[j] || pending[j] > 0) continue;
      if (pick < 0 || inst.w[j] > inst.w[pick]) pick = j;  // ties keep the smaller index
    }
    order.push_back(pick);
    done[pick] = 1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && prec.closed(pick, v)) --pending[v];
  }
  return evaluate_schedule(inst, order);
}

Schedule greedy_baseline(const Instance& inst) {
  return greedy_baseline(inst, PrecedenceRelation(inst.n, inst.prec));
}

std::optional<std::pair<int, int>> select_branch_variable(const LagrangianState& state,
                                                          const std::vector<int>& order,
                                                          const PrecedenceRelation& prec) {
  std::vector<int> pos(state.n, -1);
  for (int k = 0; k < static_cast<int>(order.size()); ++k) pos[order[k]] = k;

  // constraints by descending multiplier, ties by application order
  std::vector<std::size_t> by_beta(state.constraints.size());
  std::iota(by_beta.begin(), by_beta.end(), 0);
  std::stable_sort(by_beta.begin(), by_beta.end(), [&](std::size_t a, std::size_t b) {
    return state.constraints[a].beta > state.constraints[b].beta;
  });

  for (std::size_t i : by_beta) {
    const CycleConstraint& con = state.constraints[i];
    Cost active = 0;
    for (auto [u, v] : con.edges) active += pos[u] < pos[v] ? 1 : 0;
    if (active < 2) continue;  // satisfied with equality
    for (auto [u, v] : con.edges)
      if (pos[u] < pos[v] && !prec.related(u, v)) return std::make_pair(u, v);
    // all active edges precedence-related: skip this constraint
  }
  return std::nullopt;
}

namespace {

struct SearchContext {
  const Instance& inst;
  const SolveLimits& limits;
  std::chrono::steady_clock::time_point t0;
  std::vector<std::pair<int, int>> fixed;  // branching decisions along the path
  Schedule incumbent;
  Cost root_lb = 0;
  std::int64_t nodes = 0;
  LimitHit hit = LimitHit::None;
  BoundStats stats;

  bool out_of_budget() {
    if (hit != LimitHit::None) return true;
    if (limits.node_cap >= 0 && nodes >= limits.node_cap) {
      hit = LimitHit::NodeLimit;
      return true;
    }
    if (limits.time_cap_ms >= 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      if (ms >= limits.time_cap_ms) {
        hit = LimitHit::TimeLimit;
        return true;
      }
    }
    return false;
  }

  void visit(int depth) {
    if (out_of_budget()) return;
    ++nodes;

    std::vector<std::pair<int, int>> edges = inst.prec;
    edges.insert(edges.end(), fixed.begin(), fixed.end());
    PrecedenceRelation prec(inst.n, std::move(edges));

    Schedule reference =
        improve_schedule(inst, prec, initial_heuristic(inst, prec, limits.seed));

    LagrangianOptions lopts;
    lopts.trace = limits.trace;
    lopts.validate = limits.validate;
    if (limits.trace) *limits.trace << "node " << nodes << " depth " << depth << "\n";
    BoundResult bound = compute_bound(inst, prec, reference.order, lopts);
    stats.constraints_applied += bound.stats.constraints_applied;
    stats.invariant_checks += bound.stats.invariant_checks;
    stats.strengthenings += bound.stats.strengthenings;
    if (depth == 0) root_lb = bound.state.lb;
    if (!bound.extraction.complete())
      throw Error("bound pipeline failed to extract a complete schedule");

    std::vector<int> order = bound.extraction.full_order();
    if (bound.upper < incumbent.objective) incumbent = evaluate_schedule(inst, order);
    if (limits.validate && bound.state.lb > bound.upper)
      throw Error("invariant violated: node lb above its own upper bound");
    if (bound.state.lb >= incumbent.objective) return;  // prune

    auto branch = select_branch_variable(bound.state, order, prec);
    if (!branch) return;  // all constraints tight; node is closed
    auto [n, m] = *branch;

    // first the branch suggested by the slack constraint (m before n)
    fixed.emplace_back(m, n);
    visit(depth + 1);
    fixed.pop_back();
    if (out_of_budget()) return;
    fixed.emplace_back(n, m);
    visit(depth + 1);
    fixed.pop_back();
  }
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  Instance checked = validate_instance(inst);
  SolveResult res;
  if (checked.n == 0) {
    res.proven_optimal = true;
    return res;
  }

  PrecedenceRelation prec(checked.n, checked.prec);
  SearchContext ctx{checked, limits, t0, {}, {}, 0, 0, LimitHit::None, {}};
  ctx.incumbent =
      improve_schedule(checked, prec, initial_heuristic(checked, prec, limits.seed));
  ctx.visit(0);

  res.best_schedule = ctx.incumbent;
  res.best_objective = ctx.incumbent.objective;
  res.nodes_explored = ctx.nodes;
  res.limit_hit = ctx.hit;
  res.proven_optimal = ctx.hit == LimitHit::None;
  res.global_lb = res.proven_optimal ? res.best_objective : ctx.root_lb;
  res.stats = ctx.stats;
  res.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return res;
}

}  // namespace pmusched
