#include "pmusched/lagrangian.hpp"

#include <algorithm>
#include <numeric>

#include "pmusched/maxflow.hpp"

namespace pmusched {

Cost LagrangianState::lb_from_parts() const {
  // the sum over ordered pairs of alpha equals the sum of alpha2 over
  // unordered pairs
  Cost s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += alpha2_at(i, j);
  for (const auto& c : constraints) s += c.beta;
  return s + base;
}

std::vector<int> ExtractResult::full_order() const {
  std::vector<int> order = front;
  order.insert(order.end(), back.rbegin(), back.rend());
  return order;
}

CostMatrix build_cost_matrix(const Instance& inst, const PrecedenceRelation& prec) {
  CostMatrix c(inst.n);
  for (int n = 0; n < inst.n; ++n)
    for (int m = 0; m < inst.n; ++m) {
      if (n == m) continue;
      c.at(n, m) = prec.closed(m, n) ? ExtCost::infinite() : ExtCost(inst.p[n] * inst.w[m]);
    }
  return c;
}

LagrangianState init_multipliers(const CostMatrix& c, Cost base) {
  LagrangianState st;
  st.n = c.size();
  st.reduced = c;
  st.alpha2.assign(static_cast<std::size_t>(st.n) * st.n, 0);
  st.base = base;
  Cost pair_sum = 0;
  for (int n = 0; n < st.n; ++n)
    for (int m = n + 1; m < st.n; ++m) {
      ExtCost a = min(c.at(n, m), c.at(m, n));
      if (a.is_infinite()) throw BothInfinite(n, m);
      st.alpha2_at(n, m) = a.value();
      pair_sum += a.value();
      st.reduced.at(n, m) -= a.value();
      st.reduced.at(m, n) -= a.value();
    }
  st.lb = pair_sum + base;
  return st;
}

namespace {

std::vector<int> positions(int n, const std::vector<int>& order) {
  std::vector<int> pos(n, -1);
  for (int k = 0; k < static_cast<int>(order.size()); ++k) pos[order[k]] = k;
  return pos;
}

ExtCost cycle_min(const LagrangianState& st, const std::vector<std::pair<int, int>>& edges) {
  ExtCost m = ExtCost::infinite();
  for (auto [u, v] : edges) m = min(m, st.reduced.at(u, v));
  return m;
}

}  // namespace

std::vector<CycleConstraint> find_cycle_constraints(const LagrangianState& state, int length,
                                                    const std::vector<int>& reference) {
  const int n = state.n;
  std::vector<int> pos = positions(n, reference);
  auto forward = [&](int u, int v) { return pos[u] < pos[v]; };
  auto positive = [&](int u, int v) { return state.reduced.at(u, v).positive(); };

  std::vector<CycleConstraint> out;
  // cycles are enumerated once each, anchored at their smallest vertex, in
  // lexicographic order of the remaining vertices
  if (length == 3) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!positive(a, b)) continue;
        for (int c = a + 1; c < n; ++c) {
          if (c == b || !positive(b, c) || !positive(c, a)) continue;
          int active = forward(a, b) + forward(b, c) + forward(c, a);
          if (active != 1) continue;
          CycleConstraint cc;
          cc.edges = {{a, b}, {b, c}, {c, a}};
          ExtCost m = cycle_min(state, cc.edges);
          if (!m.is_infinite()) cc.beta = m.value();
          out.push_back(std::move(cc));
        }
      }
  } else if (length == 4) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!positive(a, b)) continue;
        for (int c = a + 1; c < n; ++c) {
          if (c == b || !positive(b, c)) continue;
          for (int d = a + 1; d < n; ++d) {
            if (d == b || d == c || !positive(c, d) || !positive(d, a)) continue;
            int active = forward(a, b) + forward(b, c) + forward(c, d) + forward(d, a);
            if (active != 1) continue;
            CycleConstraint cc;
            cc.edges = {{a, b}, {b, c}, {c, d}, {d, a}};
            ExtCost m = cycle_min(state, cc.edges);
            if (!m.is_infinite()) cc.beta = m.value();
            out.push_back(std::move(cc));
          }
        }
      }
  } else {
    throw Error("cycle constraint length must be 3 or 4");
  }
  return out;
}

Cost apply_constraint(LagrangianState& state, std::vector<std::pair<int, int>> cycle_edges) {
  ExtCost m = cycle_min(state, cycle_edges);
  if (m.is_infinite())
    throw Error("cycle with all edges infinite; precedence relation is corrupt");
  Cost beta = m.value();
  if (beta <= 0) throw NonPositiveBeta();
  for (auto [u, v] : cycle_edges) state.reduced.at(u, v) -= beta;
  state.constraints.push_back({std::move(cycle_edges), beta});
  state.lb += beta;
  return beta;
}

ExtractResult extract_schedule(const LagrangianState& state, const std::vector<int>& reference) {
  const int n = state.n;
  std::vector<int> pos = positions(n, reference);
  std::vector<std::uint8_t> left(n, 1);
  ExtractResult res;
  int remaining = n;

  auto row_zero = [&](int u) {
    for (int v = 0; v < n; ++v)
      if (v != u && left[v] && state.reduced.at(u, v).positive()) return false;
    return true;
  };
  auto col_zero = [&](int v) {
    for (int u = 0; u < n; ++u)
      if (u != v && left[u] && state.reduced.at(u, v).positive()) return false;
    return true;
  };

  while (remaining > 0) {
    // first unfilled position: job whose remaining row is all zero; among
    // candidates the one scheduled earliest in the reference
    int pick = -1;
    for (int u = 0; u < n; ++u)
      if (left[u] && row_zero(u) && (pick < 0 || pos[u] < pos[pick])) pick = u;
    if (pick >= 0) {
      res.front.push_back(pick);
      left[pick] = 0;
      --remaining;
      continue;
    }
    // last unfilled position: all-zero column; latest in the reference
    for (int v = 0; v < n; ++v)
      if (left[v] && col_zero(v) && (pick < 0 || pos[v] > pos[pick])) pick = v;
    if (pick >= 0) {
      res.back.push_back(pick);
      left[pick] = 0;
      --remaining;
      continue;
    }
    break;
  }
  for (int u = 0; u < n; ++u)
    if (left[u]) res.unscheduled.push_back(u);
  return res;
}

std::optional<CycleConstraint> find_blocking_cycle(const LagrangianState& state,
                                                   const std::vector<int>& unscheduled) {
  const int n = state.n;
  std::vector<std::uint8_t> in_set(n, 0);
  for (int u : unscheduled) in_set[u] = 1;

  // scan order: ascending count of positive-cost successors, ties by index
  std::vector<std::pair<int, int>> scan;
  for (int u : unscheduled) {
    int cnt = 0;
    for (int v : unscheduled)
      if (v != u && state.reduced.at(u, v).positive()) ++cnt;
    scan.emplace_back(cnt, u);
  }
  std::sort(scan.begin(), scan.end());

  for (auto [cnt, s] : scan) {
    (void)cnt;
    // DFS over positive-cost edges looking for a path back to s
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::pair<int, int>> stack{{s, 0}};  // (vertex, next candidate)
    std::vector<int> path{s};
    visited[s] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      bool advanced = false;
      for (int v = next; v < n; ++v) {
        if (!in_set[v] || v == u || !state.reduced.at(u, v).positive()) continue;
        if (v == s) {
          CycleConstraint cc;
          for (std::size_t i = 0; i + 1 < path.size(); ++i)
            cc.edges.emplace_back(path[i], path[i + 1]);
          cc.edges.emplace_back(path.back(), s);
          ExtCost m = cycle_min(state, cc.edges);
          if (!m.is_infinite()) cc.beta = m.value();
          return cc;
        }
        if (visited[v]) continue;
        next = v + 1;
        visited[v] = 1;
        stack.emplace_back(v, 0);
        path.push_back(v);
        advanced = true;
        break;
      }
      if (!advanced) {
        stack.pop_back();
        path.pop_back();
      }
    }
  }
  return std::nullopt;
}

Cost upper_bound(const LagrangianState& state, const PrecedenceRelation& prec,
                 const std::vector<int>& order) {
  const int n = state.n;
  std::vector<int> pos = positions(n, order);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && prec.closed(i, j) && pos[i] > pos[j]) throw InfeasibleSchedule();
  Cost ub = state.lb;
  for (const auto& con : state.constraints) {
    Cost active = 0;
    for (auto [u, v] : con.edges) active += pos[u] < pos[v] ? 1 : 0;
    ub += con.beta * (active - 1);
  }
  return ub;
}

Cost strengthen_by_maxflow(LagrangianState& state, std::size_t constraint_index,
                           const std::vector<int>& order) {
  const int n = state.n;
  // copy: appending new constraints below may reallocate the vector
  const CycleConstraint con = state.constraints.at(constraint_index);
  std::vector<int> pos = positions(n, order);
  for (int p : pos)
    if (p < 0) throw NotTriangular();

  // renumbered by schedule position the matrix must be lower triangular
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && pos[u] < pos[v] && state.reduced.at(u, v).positive()) throw NotTriangular();

  std::vector<std::pair<int, int>> active;
  for (auto e : con.edges)
    if (pos[e.first] < pos[e.second]) active.push_back(e);
  const Cost eta = static_cast<Cost>(active.size());
  if (eta < 2) throw Error("constraint is satisfied with equality; nothing to strengthen");
  const Cost beta = con.beta;
  if (beta == 0) return 0;

  auto is_con_edge = [&](int u, int v) {
    for (auto e : con.edges)
      if (e.first == u && e.second == v) return true;
    return false;
  };

  // remove the constraint: its edges gain beta
  for (auto [u, v] : con.edges) state.reduced.at(u, v) += beta;

  // Push flow for each active edge (a,b): source b, sink a, arcs from later to
  // earlier schedule positions inside [pos a, pos b], capacity = reduced cost.
  // Edges of the removed constraint itself do not get the removal bonus as
  // capacity, otherwise reinstating beta - beta_star could drive them negative.
  struct Pushed {
    std::vector<std::pair<int, int>> arcs;  // cycle edges: (a,b) then the path b->..->a
    Cost flow;
  };
  std::vector<std::vector<Pushed>> pushed(active.size());
  std::vector<Cost> achieved(active.size(), 0);
  Cost beta_star = beta;

  for (std::size_t k = 0; k < active.size(); ++k) {
    auto [a, b] = active[k];
    std::vector<int> verts;  // jobs between a and b inclusive, by position
    for (int u = 0; u < n; ++u)
      if (pos[u] >= pos[a] && pos[u] <= pos[b]) verts.push_back(u);
    std::vector<int> vid(n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) vid[verts[i]] = static_cast<int>(i);

    FlowNetwork net;
    net.n = static_cast<int>(verts.size()) + 1;
    const int super = net.n - 1;
    net.source = super;
    net.sink = vid[a];
    net.add_arc(super, vid[b], beta);
    for (int u : verts)
      for (int v : verts) {
        if (u == v || pos[v] >= pos[u]) continue;
        ExtCost c = state.reduced.at(u, v);
        if (is_con_edge(u, v)) c -= beta;  // pre-removal value
        if (!c.positive()) continue;
        net.add_arc(vid[u], vid[v], c.is_infinite() ? beta : c.value());
      }
    MaxFlowResult mf = max_flow(net);
    achieved[k] = mf.value;
    for (const auto& fp : mf.paths) {
      Pushed p;
      p.flow = fp.flow;
      p.arcs.emplace_back(a, b);
      for (std::size_t i = 1; i + 1 < fp.vertices.size(); ++i)
        p.arcs.emplace_back(verts[fp.vertices[i]], verts[fp.vertices[i + 1]]);
      for (auto [u, v] : p.arcs) state.reduced.at(u, v) -= p.flow;
      pushed[k].push_back(std::move(p));
    }
    beta_star = std::min(beta_star, achieved[k]);
    if (beta_star == 0) break;
  }

  if (beta_star == 0) {
    // roll everything back; the state is unchanged
    for (const auto& plist : pushed)
      for (const auto& p : plist)
        for (auto [u, v] : p.arcs) state.reduced.at(u, v) += p.flow;
    for (auto [u, v] : con.edges) state.reduced.at(u, v) -= beta;
    return 0;
  }

  // trim each edge's pushed flow down to exactly beta_star
  for (std::size_t k = 0; k < active.size(); ++k) {
    Cost excess = achieved[k] - beta_star;
    for (auto it = pushed[k].rbegin(); it != pushed[k].rend() && excess > 0; ++it) {
      Cost d = std::min(it->flow, excess);
      for (auto [u, v] : it->arcs) state.reduced.at(u, v) += d;
      it->flow -= d;
      excess -= d;
    }
  }

  // every surviving path becomes a cycle constraint through its active edge
  for (std::size_t k = 0; k < active.size(); ++k) {
    for (const auto& p : pushed[k]) {
      if (p.flow == 0) continue;
      state.constraints.push_back({p.arcs, p.flow});
    }
  }

  // reinstate the original constraint with the reduced multiplier
  for (auto [u, v] : con.edges) state.reduced.at(u, v) -= beta - beta_star;
  state.constraints[constraint_index].beta = beta - beta_star;
  state.lb += (eta - 1) * beta_star;
  return beta_star;
}

namespace {

void validate_state(const LagrangianState& st, BoundStats& stats) {
  for (int u = 0; u < st.n; ++u)
    for (int v = 0; v < st.n; ++v) {
      if (u == v) continue;
      const ExtCost& c = st.reduced.at(u, v);
      if (!c.is_infinite() && c.value() < 0)
        throw Error("invariant violated: negative reduced cost");
    }
  if (st.lb != st.lb_from_parts())
    throw Error("invariant violated: lb drifted from its recomputed value");
  ++stats.invariant_checks;
}

void trace_constraint(std::ostream* os, const LagrangianState& st, const CycleConstraint& con) {
  if (!os) return;
  *os << "lb=" << st.lb << " beta=" << con.beta << " cycle=";
  for (std::size_t i = 0; i < con.edges.size(); ++i)
    *os << (i ? "->" : "(") << con.edges[i].first + 1;
  *os << "->" << con.edges.front().first + 1 << ")\n";
}

}  // namespace

BoundResult compute_bound(const Instance& inst, const PrecedenceRelation& prec,
                          const std::vector<int>& reference, const LagrangianOptions& opts) {
  Cost base = 0;
  for (int j = 0; j < inst.n; ++j) base += inst.p[j] * inst.w[j];

  BoundResult res;
  res.state = init_multipliers(build_cost_matrix(inst, prec), base);
  LagrangianState& st = res.state;
  if (opts.trace) *opts.trace << "init lb=" << st.lb << "\n";
  if (opts.validate) validate_state(st, res.stats);

  Cost prev_lb = st.lb;
  auto applied = [&](const CycleConstraint& con) {
    ++res.stats.constraints_applied;
    trace_constraint(opts.trace, st, con);
    if (opts.validate) {
      if (st.lb != prev_lb + con.beta)
        throw Error("invariant violated: lb did not increase by beta");
      validate_state(st, res.stats);
    }
    prev_lb = st.lb;
  };

  for (int length : {3, 4}) {
    for (auto& cand : find_cycle_constraints(st, length, reference)) {
      // earlier applications may have zeroed an edge; re-check
      ExtCost m = cycle_min(st, cand.edges);
      if (m.is_infinite() || m.value() <= 0) continue;
      apply_constraint(st, cand.edges);
      applied(st.constraints.back());
    }
  }

  for (;;) {
    res.extraction = extract_schedule(st, reference);
    if (res.extraction.complete()) break;
    auto blocking = find_blocking_cycle(st, res.extraction.unscheduled);
    if (!blocking) break;  // a stuck extraction always leaves a positive cycle
    apply_constraint(st, blocking->edges);
    applied(st.constraints.back());
  }

  if (res.extraction.complete()) {
    std::vector<int> order = res.extraction.full_order();
    std::vector<int> pos = positions(st.n, order);
    const std::size_t initial = st.constraints.size();
    for (std::size_t i = 0; i < initial; ++i) {
      if (st.constraints[i].beta == 0) continue;
      Cost act = 0;
      for (auto [u, v] : st.constraints[i].edges) act += pos[u] < pos[v] ? 1 : 0;
      if (act < 2) continue;  // satisfied with equality
      Cost shifted = strengthen_by_maxflow(st, i, order);
      ++res.stats.strengthenings;
      if (opts.trace)
        *opts.trace << "maxflow constraint " << i << " beta*=" << shifted << " lb=" << st.lb
                    << "\n";
      if (opts.validate) validate_state(st, res.stats);
      prev_lb = st.lb;
    }
    res.upper = upper_bound(st, prec, order);
    if (opts.trace) *opts.trace << "extracted ub=" << res.upper << " lb=" << st.lb << "\n";
    if (opts.validate) {
      Schedule check = evaluate_schedule(inst, order);
      if (check.objective != res.upper)
        throw Error("invariant violated: UB formula disagrees with the schedule objective");
      ++res.stats.invariant_checks;
    }
  }
  return res;
}

}  // namespace pmusched
