#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "pmusched/instance.hpp"

namespace pmusched {

// Nonnegative cost extended with an Infinite sentinel. Infinite absorbs
// subtraction/addition of finite values; min() treats it as larger than any
// finite value. A dedicated sentinel, not a large finite number, so that it
// can never leak into multipliers or flow capacities.
class ExtCost {
 public:
  constexpr ExtCost() = default;
  constexpr explicit ExtCost(Cost v) : v_(v) {}
  static constexpr ExtCost infinite() {
    ExtCost c;
    c.inf_ = true;
    return c;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool positive() const { return inf_ || v_ > 0; }
  Cost value() const {
    assert(!inf_);
    return v_;
  }

  ExtCost& operator-=(Cost d) {
    if (!inf_) v_ -= d;
    return *this;
  }
  ExtCost& operator+=(Cost d) {
    if (!inf_) v_ += d;
    return *this;
  }

  friend ExtCost min(ExtCost a, ExtCost b) {
    if (a.inf_) return b;
    if (b.inf_) return a;
    return ExtCost(std::min(a.v_, b.v_));
  }
  friend bool operator==(ExtCost a, ExtCost b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }

 private:
  Cost v_ = 0;
  bool inf_ = false;
};

// N x N matrix of extended costs; the diagonal is unused.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(int n) : n_(n), c_(static_cast<std::size_t>(n) * n) {}

  int size() const { return n_; }
  ExtCost& at(int n, int m) { return c_[static_cast<std::size_t>(n) * n_ + m]; }
  const ExtCost& at(int n, int m) const { return c_[static_cast<std::size_t>(n) * n_ + m]; }

 private:
  int n_ = 0;
  std::vector<ExtCost> c_;
};

// Directed cycle over distinct jobs, stored as its edge list
// (n_1,n_2),...,(n_q,n_1), plus the multiplier it was applied with.
struct CycleConstraint {
  std::vector<std::pair<int, int>> edges;
  Cost beta = 0;
};

// State of the relaxation: reduced cost matrix C^(r), pair multipliers,
// applied cycle constraints and the running lower bound.
//
// Pair multipliers are stored doubled (alpha2 = 2*alpha = min(c_nm, c_mn)) so
// that every stored quantity is an exact integer; reduced costs, betas and
// bounds are integral in natural units and are stored as such.
struct LagrangianState {
  int n = 0;
  CostMatrix reduced;
  std::vector<Cost> alpha2;  // per unordered pair {n,m}, n < m, flattened
  std::vector<CycleConstraint> constraints;
  Cost base = 0;  // sum_m p_m w_m
  Cost lb = 0;

  Cost& alpha2_at(int n_, int m_) {
    if (n_ > m_) std::swap(n_, m_);
    return alpha2[static_cast<std::size_t>(n_) * n + m_];
  }
  Cost alpha2_at(int n_, int m_) const {
    if (n_ > m_) std::swap(n_, m_);
    return alpha2[static_cast<std::size_t>(n_) * n + m_];
  }
  // the bound recomputed from its parts; equals lb at all times
  Cost lb_from_parts() const;
};

// Outcome of the schedule-extraction rule: jobs fixed from the front, jobs
// fixed from the back (back[0] is the last position), and the rest.
struct ExtractResult {
  std::vector<int> front;
  std::vector<int> back;
  std::vector<int> unscheduled;

  bool complete() const { return unscheduled.empty(); }
  std::vector<int> full_order() const;  // front ++ reverse(back); requires complete()
};

struct LagrangianOptions {
  std::ostream* trace = nullptr;  // per-iteration lb / constraint / beta dump
  bool validate = false;          // re-check invariants after every mutation
};

struct BoundStats {
  std::int64_t constraints_applied = 0;
  std::int64_t invariant_checks = 0;
  std::int64_t strengthenings = 0;
};

struct BoundResult {
  LagrangianState state;
  ExtractResult extraction;
  Cost upper = 0;  // set when extraction is complete
  BoundStats stats;
};

// c_nm = p_n * w_m when m is not a predecessor of n, Infinite when it is.
CostMatrix build_cost_matrix(const Instance& inst, const PrecedenceRelation& prec);

// alpha_nm = alpha_mn = min(c_nm, c_mn)/2; reduced entries c_nm - 2*alpha_nm.
LagrangianState init_multipliers(const CostMatrix& c, Cost base);

// All 3- or 4-edge directed cycles whose edges all have strictly positive
// reduced cost and which the reference schedule satisfies with equality
// (exactly one edge ordered forward). Candidate beta = min edge cost.
std::vector<CycleConstraint> find_cycle_constraints(const LagrangianState& state, int max_len,
                                                    const std::vector<int>& reference);

// Subtracts beta = min reduced cost over the cycle's edges from each edge and
// raises lb by beta. Throws NonPositiveBeta when some edge is already zero.
// Returns the applied beta.
Cost apply_constraint(LagrangianState& state, std::vector<std::pair<int, int>> cycle_edges);

// Greedy front/back placement of jobs whose remaining row/column is all zero;
// ties go to the job placed earliest (front) / latest (back) in the reference.
ExtractResult extract_schedule(const LagrangianState& state, const std::vector<int>& reference);

// A positive-reduced-cost directed cycle within the unscheduled set, or
// nothing if that subgraph is acyclic. Jobs are scanned by ascending count of
// positive-cost successors.
std::optional<CycleConstraint> find_blocking_cycle(const LagrangianState& state,
                                                   const std::vector<int>& unscheduled);

// UB^(r) = lb + sum_i beta_i * (active_i - 1) where active_i counts the
// constraint's edges ordered forward by the schedule.
Cost upper_bound(const LagrangianState& state, const PrecedenceRelation& prec,
                 const std::vector<int>& order);

// Max-flow strengthening of one slack constraint (>= 2 active edges) against
// a complete extracted schedule. Raises lb by (eta - 1) * beta_star and keeps
// every reduced entry nonnegative. Returns beta_star.
Cost strengthen_by_maxflow(LagrangianState& state, std::size_t constraint_index,
                           const std::vector<int>& order);

// Full bound pipeline: cost matrix, pair multipliers, 3- then 4-edge
// constraint passes, extract/blocking-cycle loop, one strengthening pass.
BoundResult compute_bound(const Instance& inst, const PrecedenceRelation& prec,
                          const std::vector<int>& reference, const LagrangianOptions& opts = {});

}  // namespace pmusched
