#pragma once

#include <cstdint>
#include <vector>

#include "pmusched/instance.hpp"

namespace pmusched {

// Directed flow network on vertices 0..n-1 with integer arc capacities.
struct FlowNetwork {
  int n = 0;
  int source = 0;
  int sink = 0;
  struct Arc {
    int from, to;
    Cost cap;
  };
  std::vector<Arc> arcs;

  void add_arc(int from, int to, Cost cap) { arcs.push_back({from, to, cap}); }
};

struct FlowPath {
  std::vector<int> vertices;  // source..sink
  Cost flow;
};

struct MaxFlowResult {
  Cost value = 0;
  std::vector<FlowPath> paths;           // decomposition; flows sum to value
  std::vector<Cost> arc_flow;            // flow per input arc
  std::vector<std::uint8_t> cut_side;    // 1 = source side of a minimum cut
};

// Shortest-augmenting-path max flow with deterministic arc order, plus a
// path decomposition of the resulting flow and a minimum-cut certificate.
MaxFlowResult max_flow(const FlowNetwork& net);

}  // namespace pmusched
