#include <doctest.h>

#include <random>

#include "orienteer/oracle.hpp"
#include "support.hpp"

using namespace orienteer;
using namespace testsupport;

namespace {

Instance random_small_instance(std::mt19937_64& rng, bool dynamic) {
  int n = 2 + (int)(rng() % 4);
  std::vector<VertexSpec> vs;
  for (int i = 0; i < n; ++i) {
    VertexSpec v;
    v.profit = (Profit)(rng() % 4);
    int wins = (int)(rng() % 2);
    for (int w = 0; w < wins; ++w) {
      Time r = (Time)(rng() % 10);
      v.windows.push_back({r, r + (Time)(rng() % 5)});
    }
    vs.push_back(v);
  }
  std::vector<Cost> costs;
  for (int i = 0; i + 1 < n; ++i) costs.push_back(1 + (Cost)(rng() % 3));
  int start = (int)(rng() % n);
  auto inst = make_undirected_path(costs, vs, start, 8 + (Time)(rng() % 8));
  if (dynamic)
    for (auto& e : inst.edges)
      if (rng() % 2) {
        Time a = (Time)(rng() % 6);
        e.activity = std::vector<TimeWindow>{{a, a + 1 + (Time)(rng() % 6)}};
      }
  return normalize(inst);
}

}  // namespace

TEST_CASE("oracle handles trivial budgets") {
  auto inst = make_directed_path({1}, {vx(4, {{0, 0}}), vx(9, {{1, 5}})}, 0);
  auto sol = oracle_op(inst);
  CHECK(sol.profit == 4);
  CHECK(validate_walk(inst, sol.walk).valid);

  auto inst2 = make_directed_path({1}, {vx(4, {{2, 3}}), vx(9)}, 0);
  CHECK(oracle_op(inst2).profit == 0);
}

TEST_CASE("oracle returns zero on all-zero profits") {
  auto inst = make_directed_path({1, 1}, {vx(0), vx(0), vx(0)}, 9);
  CHECK(oracle_op(inst).profit == 0);
}

TEST_CASE("oracle witness always re-validates at the claimed profit") {
  std::mt19937_64 rng(5150);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_small_instance(rng, iter % 2 == 1);
    auto sol = oracle_op(inst);
    auto rep = validate_walk(inst, sol.walk);
    CAPTURE(iter);
    REQUIRE(rep.valid);
    REQUIRE(rep.profit == sol.profit);
  }
}

TEST_CASE("event-time search equals full grid search at tiny scale") {
  std::mt19937_64 rng(321);
  for (int iter = 0; iter < 150; ++iter) {
    auto inst = random_small_instance(rng, iter % 3 == 0);
    inst.budget = std::min<Time>(inst.budget, 15);
    inst = normalize(inst);
    CAPTURE(iter);
    REQUIRE(oracle_op(inst).profit == grid_search_op(inst));
  }
}

TEST_CASE("oracle_cop distinguishes coverable instances") {
  // A window at time zero on a distant vertex is unreachable.
  auto inst = make_directed_path({2}, {vx(1, {{0, 9}}), vx(1, {{0, 0}})}, 9);
  CHECK(!oracle_cop(inst).has_value());

  // Everything open until B on a connected static graph is coverable.
  auto inst2 = make_undirected_path({1, 1}, {vx(1, {{0, 9}}), vx(1, {{0, 9}}), vx(1, {{0, 9}})}, 1, 9);
  auto walk = oracle_cop(inst2);
  REQUIRE(walk.has_value());
  auto rep = validate_walk(inst2, *walk);
  CHECK(rep.valid);
  CHECK(rep.collected.size() == 3);
}

TEST_CASE("event_times covers releases, deadlines and shifts") {
  auto inst = make_directed_path({1, 1}, {vx(1), vx(1, {{3, 5}}), vx(1)}, 10);
  auto times = event_times(inst);
  for (Time t : {0, 1, 2, 3, 4, 5, 6, 7}) {
    CAPTURE(t);
    CHECK(std::find(times.begin(), times.end(), t) != times.end());
  }
}

TEST_CASE("event_times on a windowless instance holds the distances from start") {
  auto inst = make_directed_path({2, 3}, {vx(1), vx(1), vx(1)}, 10);
  auto times = event_times(inst);
  for (Time t : {0, 2, 5})
    CHECK(std::find(times.begin(), times.end(), t) != times.end());
}

TEST_CASE("event_times respects its cap") {
  std::vector<VertexSpec> vs;
  for (int i = 0; i < 8; ++i) {
    VertexSpec v;
    v.profit = 1;
    for (Time w = 0; w < 12; ++w) v.windows.push_back({w * 40, w * 40 + 10});
    vs.push_back(v);
  }
  std::vector<Cost> costs(7, 3);
  auto inst = normalize(make_directed_path(costs, vs, 500));
  OracleCaps caps;
  caps.max_event_times = 10;
  CHECK_THROWS_AS(event_times(inst, caps), Error);
}

TEST_CASE("restricted-round oracle never beats the free oracle") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 3 + (int)(rng() % 3);
    std::vector<VertexSpec> vs;
    for (int i = 0; i < n; ++i) {
      VertexSpec v;
      v.profit = (Profit)(rng() % 4);
      Time r = (Time)(rng() % 12);
      v.windows.push_back({r, r + (Time)(rng() % 6)});
      vs.push_back(v);
    }
    auto inst = normalize(make_directed_cycle(std::vector<Cost>(n, 1), vs, 14));
    auto full = oracle_op(inst);
    auto one = oracle_op_rounds(inst, 1);
    auto many = oracle_op_rounds(inst, 8);
    CHECK(one.profit <= full.profit);
    CHECK(many.profit == full.profit);
  }
}
