#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pmusched/instance.hpp"
#include "pmusched/rng.hpp"

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

}  // namespace

TEST_CASE("validate_instance accepts and rejects") {
  CHECK_NOTHROW(validate_instance(make({2, 3}, {4, 5})));
  CHECK_THROWS_AS(validate_instance(make({1, 1}, {1, 1}, {{0, 1}, {1, 0}})), CyclicPrecedence);
  CHECK_THROWS_AS(validate_instance(make({0, 3}, {1, 1})), NonPositiveProcTime);
  CHECK_THROWS_AS(validate_instance(make({1, 1}, {1, -2})), Error);
  CHECK_NOTHROW(validate_instance(make({1, 1}, {0, 0})));  // zero weights are fine
  CHECK_THROWS_AS(validate_instance(make({1, 1}, {1, 1}, {{0, 5}})), BadJobIndex);
  CHECK_THROWS_AS(validate_instance(make({1, 1}, {1, 1}, {{1, 1}})), BadJobIndex);

  // witness cycle is reported
  try {
    validate_instance(make({1, 1, 1}, {1, 1, 1}, {{0, 1}, {1, 2}, {2, 0}}));
    FAIL("expected CyclicPrecedence");
  } catch (const CyclicPrecedence& e) {
    CHECK(e.cycle.size() == 3);
  }
}

TEST_CASE("transitive_closure composes paths") {
  PrecedenceRelation r = transitive_closure(3, {{0, 1}, {1, 2}});
  CHECK(r.closed(0, 2));
  CHECK(r.closed(0, 1));
  CHECK(r.closed(1, 2));
  CHECK(!r.closed(2, 0));
  CHECK(r.closed_pair_count() == 3);

  CHECK(transitive_closure(4, {}).closed_pair_count() == 0);

  // chain 9 > 6 > 7 > 2 in 1-based ids gives 6 closed pairs
  PrecedenceRelation chain = transitive_closure(9, {{8, 5}, {5, 6}, {6, 1}});
  CHECK(chain.closed_pair_count() == 6);
  CHECK(chain.closed(8, 1));
}

TEST_CASE("transitive_closure is idempotent") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    Instance inst = random_instance(rng.next(), n, 0.4, 5);
    PrecedenceRelation once = transitive_closure(n, inst.prec);
    std::vector<std::pair<int, int>> closed_edges;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && once.closed(i, j)) closed_edges.emplace_back(i, j);
    PrecedenceRelation twice = transitive_closure(n, closed_edges);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) CHECK(once.closed(i, j) == twice.closed(i, j));
  }
}

TEST_CASE("evaluate_schedule completion times and objective") {
  Schedule s = evaluate_schedule(make({2, 3}, {4, 5}), {0, 1});
  CHECK(s.completions == std::vector<Cost>{2, 5});
  CHECK(s.objective == 33);
  CHECK(s.frame_length == 5);

  CHECK(evaluate_schedule(make({1, 2, 3}, {3, 2, 1}), {0, 1, 2}).objective == 15);
  CHECK(evaluate_schedule(make({7}, {2}), {0}).objective == 14);

  CHECK_THROWS_AS(evaluate_schedule(make({1, 2}, {1, 1}), {0, 0}), NotAPermutation);
  CHECK_THROWS_AS(evaluate_schedule(make({1, 2}, {1, 1}), {0}), NotAPermutation);
}

TEST_CASE("evaluate_schedule objective equals the prefix-sum identity") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = static_cast<int>(rng.uniform_int(1, 9));
    Instance inst = random_instance(rng.next(), n, 0, 10);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int k = n - 1; k > 0; --k)
      std::swap(order[k], order[rng.uniform_int(0, k)]);
    Cost expect = 0, prefix = 0;
    for (int j : order) {
      prefix += inst.p[j];
      expect += inst.w[j] * prefix;
    }
    CHECK(evaluate_schedule(inst, order).objective == expect);
  }
}

TEST_CASE("is_feasible checks closed pairs") {
  Instance inst = make({1, 1, 1}, {1, 1, 1}, {{2, 0}});
  CHECK(is_feasible(inst, {2, 0, 1}));
  CHECK(!is_feasible(inst, {0, 1, 2}));
  CHECK(is_feasible(make({1, 1}, {1, 1}), {1, 0}));
}

TEST_CASE("wspt_order follows Smith's rule") {
  Schedule s = wspt_order(make({2, 3}, {4, 5}));
  CHECK(s.order == std::vector<int>{0, 1});
  CHECK(s.objective == 33);

  CHECK(wspt_order(make({1, 2, 3}, {3, 2, 1})).order == std::vector<int>{0, 1, 2});
  CHECK(wspt_order(make({1, 2, 3}, {3, 2, 1})).objective == 15);

  // equal ratios break ties by index
  Schedule tie = wspt_order(make({1, 2}, {1, 2}));
  CHECK(tie.order == std::vector<int>{0, 1});
  CHECK(tie.objective == 7);

  CHECK_THROWS_AS(wspt_order(make({1, 1}, {1, 1}, {{0, 1}})), HasPrecedence);
}

TEST_CASE("brute_force_optimal enumerates linear extensions") {
  Schedule s = brute_force_optimal(make({1, 2, 3}, {3, 2, 1}, {{2, 0}}));
  CHECK(s.objective == 27);
  CHECK(s.order == std::vector<int>{1, 2, 0});

  CHECK(brute_force_optimal(make({2, 3}, {4, 5})).objective == 33);

  // a chain admits exactly one permutation
  Instance chain = make({4, 3, 2, 1}, {1, 2, 3, 4}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(brute_force_optimal(chain).order == std::vector<int>{0, 1, 2, 3});

  Instance big = make(std::vector<Cost>(11, 1), std::vector<Cost>(11, 1));
  CHECK_THROWS_AS(brute_force_optimal(big), TooLarge);
}

TEST_CASE("brute_force_optimal is a lower envelope of feasible schedules") {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    int n = static_cast<int>(rng.uniform_int(2, 6));
    Instance inst = random_instance(rng.next(), n, 0.3, 10);
    Schedule best = brute_force_optimal(inst);
    PrecedenceRelation prec(n, inst.prec);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (!is_feasible(prec, perm)) continue;
      CHECK(best.objective <= evaluate_schedule(inst, perm).objective);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("wspt matches the oracle on precedence-free instances") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    int n = static_cast<int>(rng.uniform_int(1, 8));
    Instance inst = random_instance(rng.next(), n, 0, 10);
    CHECK(wspt_order(inst).objective == brute_force_optimal(inst).objective);
  }
}

TEST_CASE("random_instance is reproducible and respects its ranges") {
  Instance a = random_instance(42, 12, 0.3, 10);
  Instance b = random_instance(42, 12, 0.3, 10);
  CHECK(a.p == b.p);
  CHECK(a.w == b.w);
  CHECK(a.prec == b.prec);

  CHECK(random_instance(7, 9, 0.0, 10).prec.empty());
  for (int j = 0; j < a.n; ++j) {
    CHECK(a.p[j] >= 1);
    CHECK(a.p[j] <= 50);
    CHECK(a.w[j] >= 1);
    CHECK(a.w[j] <= 10);
  }

  // density one forces a total order: every pair is closed
  Instance total = random_instance(3, 7, 1.0, 10);
  CHECK(transitive_closure(total.n, total.prec).closed_pair_count() == 7 * 6 / 2);
}

TEST_CASE("frame_stats splits the frame into equal slots") {
  FrameStats a = frame_stats(make({1, 2, 3}, {1, 1, 1}));
  CHECK(a.frame_length == 6);
  CHECK(a.slot_num == 2);
  CHECK(a.slot_den == 1);

  FrameStats b = frame_stats(make({5}, {1}));
  CHECK(b.frame_length == 5);
  CHECK(b.slot_num == 5);
  CHECK(b.slot_den == 1);

  FrameStats c = frame_stats(make({1, 1, 1, 1}, {1, 1, 1, 1}));
  CHECK(c.frame_length == 4);
  CHECK(c.slot_num == 1);
  CHECK(c.slot_den == 1);

  FrameStats d = frame_stats(make({1, 2}, {1, 1}));  // 3/2 stays a fraction
  CHECK(d.slot_num == 3);
  CHECK(d.slot_den == 2);
}
