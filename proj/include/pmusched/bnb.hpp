#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

#include "pmusched/instance.hpp"
#include "pmusched/lagrangian.hpp"

namespace pmusched {

// Random feasible schedule: repeated uniform choice among jobs whose
// predecessors are all scheduled. Deterministic per seed.
Schedule initial_heuristic(const Instance& inst, const PrecedenceRelation& prec,
                           std::uint64_t seed);

// Group-insertion improvement: maximal runs of consecutively scheduled jobs
// linked pairwise by precedence are moved to every feasible position,
// accepting the first strict improvement, until a fixpoint.
Schedule improve_schedule(const Instance& inst, const PrecedenceRelation& prec,
                          const Schedule& s);

// Largest-weight-first among jobs with no unscheduled predecessor.
Schedule greedy_baseline(const Instance& inst, const PrecedenceRelation& prec);
Schedule greedy_baseline(const Instance& inst);

// Branching pair from the slack constraint with the largest multiplier: the
// first forward edge (n,m) of the schedule with n,m unrelated by precedence.
std::optional<std::pair<int, int>> select_branch_variable(const LagrangianState& state,
                                                          const std::vector<int>& order,
                                                          const PrecedenceRelation& prec);

enum class LimitHit { None, NodeLimit, TimeLimit };

struct SolveLimits {
  std::int64_t node_cap = -1;     // < 0: unlimited
  std::int64_t time_cap_ms = -1;  // < 0: unlimited; checked between nodes
  std::uint64_t seed = 1;
  bool validate = false;          // check relaxation invariants at every node
  std::ostream* trace = nullptr;
};

struct SolveResult {
  Schedule best_schedule;
  Cost best_objective = 0;
  Cost global_lb = 0;
  std::int64_t nodes_explored = 0;
  bool proven_optimal = false;
  std::int64_t wall_time_ms = 0;
  LimitHit limit_hit = LimitHit::None;
  BoundStats stats;
};

// Depth-first active-node search. Each node augments the precedence relation
// with its fixed pairs and recomputes the bound from the original cost
// matrix; nothing is stored per node beyond the fixed pair itself.
SolveResult solve(const Instance& inst, const SolveLimits& limits = {});

}  // namespace pmusched
