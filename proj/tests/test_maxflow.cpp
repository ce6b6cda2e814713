#include <doctest.h>

#include "pmusched/maxflow.hpp"
#include "pmusched/rng.hpp"

using namespace pmusched;

TEST_CASE("single arc") {
  FlowNetwork net;
  net.n = 2;
  net.source = 0;
  net.sink = 1;
  net.add_arc(0, 1, 5);
  MaxFlowResult r = max_flow(net);
  CHECK(r.value == 5);
  REQUIRE(r.paths.size() == 1);
  CHECK(r.paths[0].vertices == std::vector<int>{0, 1});
  CHECK(r.paths[0].flow == 5);
}

TEST_CASE("diamond") {
  FlowNetwork net;
  net.n = 4;
  net.source = 0;
  net.sink = 3;
  net.add_arc(0, 1, 1);
  net.add_arc(0, 2, 1);
  net.add_arc(1, 3, 1);
  net.add_arc(2, 3, 1);
  MaxFlowResult r = max_flow(net);
  CHECK(r.value == 2);
  CHECK(r.paths.size() == 2);
  Cost total = 0;
  for (const auto& p : r.paths) total += p.flow;
  CHECK(total == 2);
}

TEST_CASE("disconnected terminals") {
  FlowNetwork net;
  net.n = 3;
  net.source = 0;
  net.sink = 2;
  net.add_arc(0, 1, 4);
  MaxFlowResult r = max_flow(net);
  CHECK(r.value == 0);
  CHECK(r.paths.empty());
}

TEST_CASE("bottleneck in the middle") {
  FlowNetwork net;
  net.n = 4;
  net.source = 0;
  net.sink = 3;
  net.add_arc(0, 1, 10);
  net.add_arc(1, 2, 3);
  net.add_arc(2, 3, 10);
  MaxFlowResult r = max_flow(net);
  CHECK(r.value == 3);
}

TEST_CASE("random networks: flow equals cut, decomposition is consistent") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    FlowNetwork net;
    net.n = n;
    net.source = 0;
    net.sink = n - 1;
    int arcs = static_cast<int>(rng.uniform_int(1, 2 * n));
    for (int a = 0; a < arcs; ++a) {
      int u = static_cast<int>(rng.uniform_int(0, n - 1));
      int v = static_cast<int>(rng.uniform_int(0, n - 1));
      if (u == v) continue;
      net.add_arc(u, v, rng.uniform_int(0, 9));
    }
    MaxFlowResult r = max_flow(net);

    // cut certificate: source side excludes the sink, crossing capacity == value
    CHECK(r.cut_side[net.source] == 1);
    CHECK(r.cut_side[net.sink] == 0);
    Cost cut = 0;
    for (std::size_t k = 0; k < net.arcs.size(); ++k)
      if (r.cut_side[net.arcs[k].from] && !r.cut_side[net.arcs[k].to]) cut += net.arcs[k].cap;
    CHECK(cut == r.value);

    // arc flows within capacity, conserved at internal vertices
    std::vector<Cost> net_out(n, 0);
    for (std::size_t k = 0; k < net.arcs.size(); ++k) {
      CHECK(r.arc_flow[k] >= 0);
      CHECK(r.arc_flow[k] <= net.arcs[k].cap);
      net_out[net.arcs[k].from] += r.arc_flow[k];
      net_out[net.arcs[k].to] -= r.arc_flow[k];
    }
    for (int v = 0; v < n; ++v) {
      if (v == net.source || v == net.sink) continue;
      CHECK(net_out[v] == 0);
    }

    // paths run source -> sink and sum to the value
    Cost total = 0;
    for (const auto& p : r.paths) {
      CHECK(p.vertices.front() == net.source);
      CHECK(p.vertices.back() == net.sink);
      CHECK(p.flow > 0);
      total += p.flow;
    }
    CHECK(total == r.value);
  }
}

TEST_CASE("determinism") {
  FlowNetwork net;
  net.n = 5;
  net.source = 0;
  net.sink = 4;
  net.add_arc(0, 1, 2);
  net.add_arc(0, 2, 2);
  net.add_arc(1, 3, 1);
  net.add_arc(2, 3, 2);
  net.add_arc(1, 2, 1);
  net.add_arc(3, 4, 3);
  MaxFlowResult a = max_flow(net);
  MaxFlowResult b = max_flow(net);
  CHECK(a.value == b.value);
  CHECK(a.arc_flow == b.arc_flow);
  REQUIRE(a.paths.size() == b.paths.size());
  for (std::size_t i = 0; i < a.paths.size(); ++i) {
    CHECK(a.paths[i].vertices == b.paths[i].vertices);
    CHECK(a.paths[i].flow == b.paths[i].flow);
  }
}
