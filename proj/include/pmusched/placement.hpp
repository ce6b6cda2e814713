#pragma once

#include <cstdint>
#include <vector>

#include "pmusched/grid.hpp"

namespace pmusched {

struct PlacementLimits {
  std::int64_t time_cap_ms = 60'000;  // < 0: unlimited
  std::int64_t node_cap = -1;         // < 0: unlimited
};

struct Placement {
  std::vector<int> pmu_buses;  // ascending bus ids
  bool optimal = false;        // exact search completed; false = greedy fallback
};

// Minimum set of buses such that every bus either hosts a PMU or neighbors
// one (a PMU observes its own bus and all adjacent buses). Solved exactly by
// depth-first branch and bound; among optimal sets the lexicographically
// smallest bus-id sequence is returned. When the limits run out the greedy
// cover is returned with optimal = false.
Placement place_pmus(const PowerNetwork& net, const PlacementLimits& limits = {});

// True iff every bus is covered by the given PMU set.
bool covers_all(const PowerNetwork& net, const std::vector<int>& pmu_buses);

}  // namespace pmusched
