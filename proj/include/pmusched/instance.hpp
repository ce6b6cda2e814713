#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pmusched/errors.hpp"

namespace pmusched {

using Cost = std::int64_t;

// A 1|prec|sum(wC) problem: n jobs, integer processing times (ms), integer
// weights and a precedence DAG. Job indices are 0-based in memory; the file
// format and labels use the external 1-based numbering.
struct Instance {
  int n = 0;
  std::vector<Cost> p;
  std::vector<Cost> w;
  std::vector<std::pair<int, int>> prec;  // (i, j): i must finish before j starts
  std::vector<std::string> labels;        // optional external names (e.g. bus ids)

  Cost total_proc() const;
};

// Transitively closed precedence relation. closed(i, j) is true iff job i must
// finish before job j starts, directly or through a path of constraints.
class PrecedenceRelation {
 public:
  PrecedenceRelation() = default;
  // Throws CyclicPrecedence (with a witness cycle) if the edges are cyclic,
  // BadJobIndex if an endpoint is out of range or a self-pair.
  PrecedenceRelation(int n, std::vector<std::pair<int, int>> edges);

  int size() const { return n_; }
  bool closed(int i, int j) const { return closed_[static_cast<std::size_t>(i) * n_ + j] != 0; }
  bool related(int i, int j) const { return closed(i, j) || closed(j, i); }
  int closed_pair_count() const;
  const std::vector<std::pair<int, int>>& raw_edges() const { return raw_; }

 private:
  int n_ = 0;
  std::vector<std::uint8_t> closed_;
  std::vector<std::pair<int, int>> raw_;
};

struct Schedule {
  std::vector<int> order;         // order[k] = job in position k
  std::vector<Cost> completions;  // completions[j] = C_j
  Cost objective = 0;             // sum_j w_j C_j
  Cost frame_length = 0;          // t = sum_j p_j
};

struct FrameStats {
  Cost frame_length;            // t
  Cost slot_num, slot_den;      // slot duration t/N as a reduced fraction
};

// Checks all Instance invariants and returns the instance unchanged.
Instance validate_instance(Instance raw);

PrecedenceRelation transitive_closure(int n, const std::vector<std::pair<int, int>>& edges);

// Completion times and objective for an order; feasibility is not checked.
Schedule evaluate_schedule(const Instance& inst, const std::vector<int>& order);

bool is_feasible(const Instance& inst, const std::vector<int>& order);
bool is_feasible(const PrecedenceRelation& prec, const std::vector<int>& order);

// Smith's rule: optimal for empty precedence. Throws HasPrecedence otherwise.
Schedule wspt_order(const Instance& inst);

// Exhaustive oracle over all linear extensions; capped at 10 jobs.
Schedule brute_force_optimal(const Instance& inst);

// Seeded generator: p ~ U[1,50], each pair (i,j) with i<j kept as an edge with
// the given probability, w ~ U[1,weight_max]. Bit-reproducible per seed.
Instance random_instance(std::uint64_t seed, int n, double density, Cost weight_max);

FrameStats frame_stats(const Instance& inst);

}  // namespace pmusched
