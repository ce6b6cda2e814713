#include "pmusched/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace pmusched {

namespace {

struct Edge {
  int to;
  Cost cap;  // residual capacity
  int rev;   // index of the reverse edge in adj[to]
  bool forward;
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
  const int n = net.n;
  std::vector<std::vector<Edge>> adj(n);
  std::vector<std::pair<int, int>> arc_ref;  // (vertex, edge index) per input arc
  arc_ref.reserve(net.arcs.size());
  for (const auto& a : net.arcs) {
    adj[a.from].push_back({a.to, a.cap, static_cast<int>(adj[a.to].size()), true});
    adj[a.to].push_back({a.from, 0, static_cast<int>(adj[a.from].size()) - 1, false});
    arc_ref.emplace_back(a.from, static_cast<int>(adj[a.from].size()) - 1);
  }

  MaxFlowResult res;
  std::vector<int> prev_v(n), prev_e(n);
  for (;;) {
    // BFS for a shortest augmenting path (Edmonds-Karp)
    std::vector<std::uint8_t> seen(n, 0);
    std::queue<int> q;
    q.push(net.source);
    seen[net.source] = 1;
    bool reached = false;
    while (!q.empty() && !reached) {
      int u = q.front();
      q.pop();
      for (int e = 0; e < static_cast<int>(adj[u].size()); ++e) {
        const Edge& ed = adj[u][e];
        if (ed.cap <= 0 || seen[ed.to]) continue;
        seen[ed.to] = 1;
        prev_v[ed.to] = u;
        prev_e[ed.to] = e;
        if (ed.to == net.sink) {
          reached = true;
          break;
        }
        q.push(ed.to);
      }
    }
    if (!reached) break;
    Cost push = std::numeric_limits<Cost>::max();
    for (int v = net.sink; v != net.source; v = prev_v[v])
      push = std::min(push, adj[prev_v[v]][prev_e[v]].cap);
    for (int v = net.sink; v != net.source; v = prev_v[v]) {
      Edge& ed = adj[prev_v[v]][prev_e[v]];
      ed.cap -= push;
      adj[v][ed.rev].cap += push;
    }
    res.value += push;
  }

  // min-cut certificate: vertices reachable from the source in the residual graph
  res.cut_side.assign(n, 0);
  {
    std::queue<int> q;
    q.push(net.source);
    res.cut_side[net.source] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Edge& ed : adj[u]) {
        if (ed.cap > 0 && !res.cut_side[ed.to]) {
          res.cut_side[ed.to] = 1;
          q.push(ed.to);
        }
      }
    }
  }

  // per-arc flow = reverse edge residual
  res.arc_flow.resize(net.arcs.size());
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    auto [u, e] = arc_ref[k];
    res.arc_flow[k] = adj[net.arcs[k].to][adj[u][e].rev].cap;
  }

  // decompose into source->sink paths by walking positive-flow arcs in input
  // order; circulations (possible on cyclic graphs) are cancelled on the fly
  std::vector<Cost> remaining = res.arc_flow;
  std::vector<std::vector<std::size_t>> out_arcs(n);
  for (std::size_t k = 0; k < net.arcs.size(); ++k) out_arcs[net.arcs[k].from].push_back(k);
  Cost left = res.value;
  while (left > 0) {
    std::vector<int> path{net.source};
    std::vector<std::size_t> path_arcs;
    std::vector<int> at(n, -1);  // position of each vertex in the current path
    at[net.source] = 0;
    int u = net.source;
    while (u != net.sink) {
      std::size_t chosen = std::size_t(-1);
      for (std::size_t k : out_arcs[u])
        if (remaining[k] > 0) {
          chosen = k;
          break;
        }
      // flow conservation guarantees a way forward
      if (chosen == std::size_t(-1)) throw Error("flow decomposition failed");
      int v = net.arcs[chosen].to;
      if (at[v] >= 0) {
        // cancel the cycle path[at[v]..] + chosen
        Cost c = remaining[chosen];
        for (std::size_t i = at[v]; i < path_arcs.size(); ++i)
          c = std::min(c, remaining[path_arcs[i]]);
        remaining[chosen] -= c;
        for (std::size_t i = at[v]; i < path_arcs.size(); ++i) remaining[path_arcs[i]] -= c;
        for (std::size_t i = at[v] + 1; i < path.size(); ++i) at[path[i]] = -1;
        path.resize(at[v] + 1);
        path_arcs.resize(at[v]);
        u = v;
        continue;
      }
      path_arcs.push_back(chosen);
      at[v] = static_cast<int>(path.size());
      path.push_back(v);
      u = v;
    }
    Cost f = std::numeric_limits<Cost>::max();
    for (std::size_t k : path_arcs) f = std::min(f, remaining[k]);
    for (std::size_t k : path_arcs) remaining[k] -= f;
    res.paths.push_back({std::move(path), f});
    left -= f;
  }
  return res;
}

}  // namespace pmusched
