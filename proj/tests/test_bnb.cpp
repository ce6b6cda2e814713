#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "pmusched/bnb.hpp"
#include "pmusched/rng.hpp"
#include "pmusched/verify.hpp"

using namespace pmusched;

namespace {

Instance make(std::vector<Cost> p, std::vector<Cost> w,
              std::vector<std::pair<int, int>> prec = {}) {
  Instance inst;
  inst.n = static_cast<int>(p.size());
  inst.p = std::move(p);
  inst.w = std::move(w);
  inst.prec = std::move(prec);
  return inst;
}

Instance trace_instance() { return make({1, 2, 3}, {3, 2, 1}, {{2, 0}}); }

Instance chain_instance(int n, std::uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  for (int j = 0; j < n; ++j) {
    inst.p.push_back(rng.uniform_int(1, 50));
    inst.w.push_back(rng.uniform_int(1, 10));
  }
  for (int j = 0; j + 1 < n; ++j) inst.prec.emplace_back(j, j + 1);
  return inst;
}

}  // namespace

TEST_CASE("initial_heuristic is feasible and seed-deterministic") {
  Instance chain = chain_instance(6, 3);
  PrecedenceRelation cprec(6, chain.prec);
  for (std::uint64_t seed : {1, 7, 99}) {
    Schedule s = initial_heuristic(chain, cprec, seed);
    CHECK(s.order == std::vector<int>{0, 1, 2, 3, 4, 5});  // unique extension
  }

  Instance free = make({1, 1, 1}, {1, 1, 1});
  PrecedenceRelation fprec(3, {});
  Schedule a = initial_heuristic(free, fprec, 5);
  Schedule b = initial_heuristic(free, fprec, 5);
  CHECK(a.order == b.order);

  Instance inst = trace_instance();
  PrecedenceRelation prec(3, inst.prec);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Schedule s = initial_heuristic(inst, prec, seed);
    CHECK(is_feasible(prec, s.order));  // job 3 always before job 1
  }
}

TEST_CASE("improve_schedule reaches 27 from the bad trace order") {
  Instance inst = trace_instance();
  PrecedenceRelation prec(3, inst.prec);
  Schedule bad = evaluate_schedule(inst, {2, 1, 0});
  CHECK(bad.objective == 31);
  Schedule better = improve_schedule(inst, prec, bad);
  CHECK(better.objective == 27);
  CHECK(is_feasible(prec, better.order));

  // an already optimal schedule stays put
  Schedule opt = evaluate_schedule(inst, {1, 2, 0});
  CHECK(improve_schedule(inst, prec, opt).objective == 27);

  Instance single = make({7}, {3});
  PrecedenceRelation sprec(1, {});
  CHECK(improve_schedule(single, sprec, evaluate_schedule(single, {0})).order ==
        std::vector<int>{0});
}

TEST_CASE("improve_schedule never hurts feasibility or the objective") {
  Rng rng(71);
  for (int t = 0; t < 1000; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 10));
    double density = std::vector<double>{0, 0.2, 0.5, 0.9}[rng.uniform_int(0, 3)];
    Instance inst = random_instance(rng.next(), n, density, 10);
    PrecedenceRelation prec(n, inst.prec);
    Schedule start = initial_heuristic(inst, prec, rng.next());
    Schedule out = improve_schedule(inst, prec, start);
    CHECK(out.objective <= start.objective);
    CHECK(is_feasible(prec, out.order));
  }
}

TEST_CASE("greedy_baseline picks heaviest available job") {
  Instance inst = trace_instance();
  Schedule g = greedy_baseline(inst);
  CHECK(g.order == std::vector<int>{1, 2, 0});
  CHECK(g.objective == 27);

  Instance chain = chain_instance(5, 11);
  CHECK(greedy_baseline(chain).order == std::vector<int>{0, 1, 2, 3, 4});

  // no precedence, distinct weights: weight-descending order
  Instance free = make({1, 1, 1}, {2, 9, 4});
  CHECK(greedy_baseline(free).order == std::vector<int>{1, 2, 0});

  // weight ties go to the smaller index
  Instance tied = make({1, 1}, {5, 5});
  CHECK(greedy_baseline(tied).order == std::vector<int>{0, 1});
}

TEST_CASE("select_branch_variable picks slack constraints by multiplier") {
  PrecedenceRelation prec(3, {{2, 0}});

  LagrangianState st;
  st.n = 3;
  st.reduced = CostMatrix(3);
  st.alpha2.assign(9, 0);

  SUBCASE("no slack constraint means the node is closed") {
    st.constraints.push_back({{{0, 1}, {1, 2}, {2, 0}}, 4});
    // order (2,1,0): only (2,0) is active, the constraint is tight
    CHECK(!select_branch_variable(st, {2, 1, 0}, prec).has_value());
  }
  SUBCASE("slack constraint yields its first unrelated active edge") {
    st.constraints.push_back({{{0, 1}, {1, 2}, {2, 0}}, 4});
    // order (0,1,2): active (0,1) and (1,2); (0,1) is unrelated and comes first
    auto sel = select_branch_variable(st, {0, 1, 2}, prec);
    REQUIRE(sel.has_value());
    CHECK(*sel == std::make_pair(0, 1));
  }
  SUBCASE("larger multipliers are preferred") {
    st.constraints.push_back({{{1, 2}, {2, 0}, {0, 1}}, 2});
    st.constraints.push_back({{{0, 1}, {1, 2}, {2, 0}}, 5});
    auto sel = select_branch_variable(st, {0, 1, 2}, prec);
    REQUIRE(sel.has_value());
    CHECK(*sel == std::make_pair(0, 1));  // from the beta=5 constraint
  }
  SUBCASE("equal multipliers fall back to application order") {
    st.constraints.push_back({{{1, 2}, {2, 0}, {0, 1}}, 2});
    st.constraints.push_back({{{0, 1}, {1, 2}, {2, 0}}, 2});
    auto sel = select_branch_variable(st, {0, 1, 2}, prec);
    REQUIRE(sel.has_value());
    CHECK(*sel == std::make_pair(1, 2));  // first active edge of the first constraint
  }
  SUBCASE("constraints whose active edges are all related get skipped") {
    PrecedenceRelation chain(3, {{0, 1}, {1, 2}});
    st.constraints.push_back({{{0, 1}, {1, 2}, {2, 0}}, 4});
    CHECK(!select_branch_variable(st, {0, 1, 2}, chain).has_value());
  }
}

TEST_CASE("solve closes the trace instance at the root") {
  SolveLimits limits;
  limits.validate = true;
  SolveResult res = solve(trace_instance(), limits);
  CHECK(res.best_objective == 27);
  CHECK(res.proven_optimal);
  CHECK(res.nodes_explored == 1);
  CHECK(res.global_lb == 27);
  CHECK(res.limit_hit == LimitHit::None);
}

TEST_CASE("solve matches the oracle on random instances") {
  VerifyParams params;
  params.trials = 60;
  params.seed = 2024;
  VerifyOutcome out = verify_sweep(params);
  CHECK(out.failures == 0);
  CHECK(out.trials_run == 60);
  CHECK(out.stats.invariant_checks > 0);
}

TEST_CASE("solve handles chains in a single node") {
  for (int n : {2, 10, 40}) {
    Instance chain = chain_instance(n, 5 + n);
    SolveResult res = solve(chain);
    CHECK(res.proven_optimal);
    CHECK(res.nodes_explored == 1);
    std::vector<int> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(res.best_schedule.order == expect);
    CHECK(res.best_objective == greedy_baseline(chain).objective);
  }
}

TEST_CASE("solver dominates greedy whenever it proves optimality") {
  Rng rng(87);
  for (int t = 0; t < 40; ++t) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    double density = std::vector<double>{0, 0.3, 0.7}[rng.uniform_int(0, 2)];
    Instance inst = random_instance(rng.next(), n, density, 10);
    SolveResult res = solve(inst);
    REQUIRE(res.proven_optimal);
    CHECK(res.best_objective <= greedy_baseline(inst).objective);
  }
}

TEST_CASE("limits produce a feasible incumbent and a valid bound") {
  // this instance takes 11 nodes to close when run without limits
  Instance inst = random_instance(424, 16, 0.25, 10);
  SolveLimits limits;
  limits.node_cap = 1;
  SolveResult res = solve(inst, limits);
  CHECK(res.limit_hit == LimitHit::NodeLimit);
  CHECK(!res.proven_optimal);
  CHECK(res.nodes_explored == 1);
  CHECK(is_feasible(inst, res.best_schedule.order));
  CHECK(res.global_lb <= res.best_objective);

  SolveLimits tlimits;
  tlimits.time_cap_ms = 0;
  SolveResult tres = solve(inst, tlimits);
  CHECK(tres.limit_hit == LimitHit::TimeLimit);
  CHECK(is_feasible(inst, tres.best_schedule.order));
}

TEST_CASE("branching splits the feasible set exactly in two") {
  Rng rng(313);
  for (int t = 0; t < 25; ++t) {
    int n = static_cast<int>(rng.uniform_int(3, 6));
    Instance inst = random_instance(rng.next(), n, 0.2, 10);
    PrecedenceRelation prec(n, inst.prec);
    Schedule ref = improve_schedule(inst, prec, initial_heuristic(inst, prec, 1));
    BoundResult bound = compute_bound(inst, prec, ref.order);
    REQUIRE(bound.extraction.complete());
    auto sel = select_branch_variable(bound.state, bound.extraction.full_order(), prec);
    if (!sel) continue;
    auto [bn, bm] = *sel;

    auto extensions = [&](std::vector<std::pair<int, int>> edges) {
      PrecedenceRelation r(n, edges);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::set<std::vector<int>> set;
      do {
        if (is_feasible(r, perm)) set.insert(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return set;
    };

    auto parent = extensions(inst.prec);
    auto left_edges = inst.prec;
    left_edges.emplace_back(bm, bn);
    auto right_edges = inst.prec;
    right_edges.emplace_back(bn, bm);
    auto left = extensions(left_edges);
    auto right = extensions(right_edges);

    CHECK(left.size() + right.size() == parent.size());
    for (const auto& s : left) CHECK(parent.count(s) == 1);
    for (const auto& s : right) CHECK(parent.count(s) == 1);
    for (const auto& s : left) CHECK(right.count(s) == 0);
  }
}
