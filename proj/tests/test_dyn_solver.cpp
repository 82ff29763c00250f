#include <doctest.h>

#include <random>

#include "orienteer/dyn_solver.hpp"
#include "orienteer/oracle.hpp"
#include "support.hpp"

using namespace orienteer;
using namespace testsupport;

namespace {

Instance random_dyn_path(std::mt19937_64& rng, int max_n = 7) {
  int n = 2 + (int)(rng() % (max_n - 1));
  std::vector<VertexSpec> vs;
  for (int i = 0; i < n; ++i) vs.push_back(vx((Profit)(rng() % 5)));
  std::vector<Cost> costs;
  for (int i = 0; i + 1 < n; ++i) costs.push_back(1 + (Cost)(rng() % 3));
  int start = (int)(rng() % n);
  auto inst = make_undirected_path(costs, vs, start, 6 + (Time)(rng() % 15));
  for (auto& e : inst.edges) {
    int intervals = (int)(rng() % 3);
    if (intervals == 0) continue;
    std::vector<TimeWindow> act;
    Time at = 0;
    for (int i = 0; i < intervals; ++i) {
      Time a = at + (Time)(rng() % 5);
      Time b = a + (Time)(rng() % 7);
      act.push_back({a, b});
      at = b + 2;
    }
    e.activity = act;
  }
  return normalize(inst);
}

}  // namespace

TEST_CASE("earliest_arrival walks static edges without waiting") {
  auto inst = make_undirected_path({1, 1, 1}, {vx(1), vx(1), vx(1), vx(1)}, 0, 20);
  CHECK(earliest_arrival(inst, 0, 3, 2, Direction::Right) == 5);
}

TEST_CASE("earliest_arrival fails on an edge that never reopens") {
  auto inst = make_undirected_path({1}, {vx(1), vx(1)}, 0, 20);
  inst.edges[0].activity = std::vector<TimeWindow>{{0, 1}};
  CHECK(earliest_arrival(inst, 0, 1, 0, Direction::Right) == 1);
  CHECK(!earliest_arrival(inst, 0, 1, 1, Direction::Right).has_value());
}

TEST_CASE("earliest_arrival waits for an interval to open") {
  auto inst = make_undirected_path({2}, {vx(1), vx(1)}, 0, 20);
  inst.edges[0].activity = std::vector<TimeWindow>{{5, 10}};
  CHECK(earliest_arrival(inst, 0, 1, 0, Direction::Right) == 7);
}

TEST_CASE("earliest_arrival arrival time is monotone in departure") {
  std::mt19937_64 rng(22);
  for (int iter = 0; iter < 100; ++iter) {
    auto inst = random_dyn_path(rng);
    int to = inst.n - 1;
    std::optional<Time> prev;
    for (Time dep = 0; dep <= 6; ++dep) {
      auto arr = earliest_arrival(inst, inst.start, to, dep,
                                  to >= inst.start ? Direction::Right : Direction::Left);
      if (prev && arr) CHECK(*arr >= *prev);
      if (prev && !arr) CHECK(true);
      if (!prev && arr && dep > 0) FAIL("arrival appeared for a later departure");
      prev = arr;
      if (!arr) break;
    }
  }
}

TEST_CASE("static undirected path with a large budget collects everything") {
  auto inst = make_undirected_path({1, 1, 1}, {vx(2), vx(3), vx(4), vx(5)}, 2, 50);
  auto sol = solve_dyn_undirected_path(inst);
  CHECK(sol.profit == 14);
}

TEST_CASE("getting stranded on a far vertex is still a valid strategy") {
  auto inst = make_undirected_path({1, 1}, {vx(5), vx(1), vx(1)}, 1, 4);
  inst.edges[0].activity = std::vector<TimeWindow>{{0, 1}};
  auto sol = solve_dyn_undirected_path(inst);
  CHECK(sol.profit == 6);
  auto rep = validate_walk(normalize(inst), sol.walk);
  CHECK(rep.valid);
}

TEST_CASE("zero budget keeps only the start profit") {
  auto inst = make_undirected_path({1, 1}, {vx(5), vx(7), vx(1)}, 1, 0);
  CHECK(solve_dyn_undirected_path(inst).profit == 7);
}

TEST_CASE("dyn path rejects instances with vertex windows") {
  auto inst = make_undirected_path({1}, {vx(1, {{0, 3}}), vx(1)}, 0, 9);
  CHECK_THROWS_AS(solve_dyn_undirected_path(inst), Error);
}

TEST_CASE("dyn path matches the oracle on random dynamic instances") {
  std::mt19937_64 rng(2323);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = random_dyn_path(rng);
    CAPTURE(iter);
    auto sol = solve_dyn_undirected_path(inst);
    auto truth = oracle_op(inst);
    REQUIRE(sol.profit == truth.profit);
    auto rep = validate_walk(inst, sol.walk);
    REQUIRE(rep.valid);
    REQUIRE(rep.profit == sol.profit);
    // Visited set is a contiguous interval containing the start.
    if (!rep.collected.empty()) {
      int lo = rep.collected.front(), hi = rep.collected.back();
      CHECK(lo <= inst.start);
      CHECK(hi >= inst.start);
      std::set<int> seen;
      for (const auto& vis : sol.walk.visits) seen.insert(vis.vertex);
      for (int v = lo; v <= hi; ++v) CHECK(seen.count(v) == 1);
    }
  }
}

TEST_CASE("directed chain greedy collects the reachable prefix") {
  auto inst = make_directed_path({1, 1, 1}, {vx(1), vx(2), vx(3), vx(4)}, 10);
  CHECK(solve_dyn_directed_chain(inst).profit == 10);

  auto dead = make_directed_path({1, 1, 1}, {vx(1), vx(2), vx(3), vx(4)}, 10);
  dead.edges[1].activity = std::vector<TimeWindow>{};
  dead.edges[1].activity->clear();
  auto sol = solve_dyn_directed_chain(dead);
  CHECK(sol.profit == 3);
}

TEST_CASE("directed dynamic cycle matches the oracle") {
  std::mt19937_64 rng(2424);
  for (int iter = 0; iter < 120; ++iter) {
    int n = 2 + (int)(rng() % 4);
    std::vector<VertexSpec> vs;
    for (int i = 0; i < n; ++i) vs.push_back(vx((Profit)(rng() % 5)));
    auto inst = make_directed_cycle(std::vector<Cost>(n, 1 + (Cost)(rng() % 2)), vs,
                                    4 + (Time)(rng() % 12));
    for (auto& e : inst.edges)
      if (rng() % 3 == 0) {
        Time a = (Time)(rng() % 4);
        e.activity = std::vector<TimeWindow>{{a, a + 2 + (Time)(rng() % 6)}};
      }
    inst = normalize(inst);
    CAPTURE(iter);
    auto sol = solve_dyn_directed_chain(inst);
    auto truth = oracle_op(inst);
    REQUIRE(sol.profit == truth.profit);
    REQUIRE(validate_walk(inst, sol.walk).valid);
  }
}
