#include <doctest.h>

#include <random>

#include "orienteer/oracle.hpp"
#include "orienteer/tree_solver.hpp"
#include "support.hpp"

using namespace orienteer;
using namespace testsupport;

namespace {

Instance make_tree(std::vector<std::tuple<int, int, Cost>> edges, std::vector<VertexSpec> vs,
                   int start, Time budget) {
  Instance inst;
  inst.topology = Topology::Tree;
  inst.n = (int)vs.size();
  inst.start = start;
  inst.budget = budget;
  inst.vertices = std::move(vs);
  for (auto [u, v, c] : edges) inst.edges.push_back({u, v, c, std::nullopt});
  return inst;
}

Instance random_tree(std::mt19937_64& rng, int max_n = 8, Cost max_cost = 3,
                     Profit max_profit = 4) {
  int n = 1 + (int)(rng() % max_n);
  std::vector<VertexSpec> vs;
  for (int i = 0; i < n; ++i) vs.push_back(vx((Profit)(rng() % (max_profit + 1))));
  std::vector<std::tuple<int, int, Cost>> edges;
  for (int v = 1; v < n; ++v)
    edges.push_back({(int)(rng() % v), v, 1 + (Cost)(rng() % max_cost)});
  int start = (int)(rng() % n);
  Time budget = 2 + (Time)(rng() % 16);
  return make_tree(std::move(edges), std::move(vs), start, budget);
}

}  // namespace

TEST_CASE("binarize splits a 4-leaf star with two helpers") {
  auto star = make_tree({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}},
                        {vx(1), vx(1), vx(1), vx(1), vx(1)}, 0, 10);
  auto bin = binarize_tree(star);
  CHECK(bin.n == 7);
  CHECK(validate_instance(bin).valid());
  int zero_cost = 0;
  for (const auto& e : bin.edges)
    if (e.cost == 0) ++zero_cost;
  CHECK(zero_cost == 2);
}

TEST_CASE("binarize keeps already-binary trees and single vertices") {
  auto path = make_tree({{0, 1, 2}, {1, 2, 3}}, {vx(1), vx(1), vx(1)}, 0, 10);
  CHECK(binarize_tree(path).n == 3);
  auto single = make_tree({}, {vx(4)}, 0, 5);
  CHECK(binarize_tree(single).n == 1);
}

TEST_CASE("star with budget three takes the open walk") {
  auto star = make_tree({{0, 1, 1}, {0, 2, 1}}, {vx(1), vx(1), vx(1)}, 0, 3);
  CHECK(solve_tree(star).profit == 3);
  auto tighter = make_tree({{0, 1, 1}, {0, 2, 1}}, {vx(1), vx(1), vx(1)}, 0, 2);
  CHECK(solve_tree(tighter).profit == 2);
}

TEST_CASE("tree solver matches the oracle on random trees") {
  std::mt19937_64 rng(3030);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = random_tree(rng);
    CAPTURE(iter);
    auto sol = solve_tree(inst);
    auto truth = oracle_op(inst);
    REQUIRE(sol.profit == truth.profit);
    auto rep = validate_walk(normalize(inst), sol.walk);
    REQUIRE(rep.valid);
    REQUIRE(rep.profit == sol.profit);
  }
}

TEST_CASE("budget beyond a double tree tour changes nothing") {
  std::mt19937_64 rng(3131);
  for (int iter = 0; iter < 60; ++iter) {
    auto inst = random_tree(rng, 7);
    Cost total = 0;
    for (const auto& e : inst.edges) total += e.cost;
    Instance big = inst;
    big.budget = 2 * total;
    Instance bigger = inst;
    bigger.budget = 4 * total + 13;
    CHECK(solve_tree(big).profit == solve_tree(bigger).profit);
  }
}

TEST_CASE("tree solver rejects windows and non-trees") {
  auto bad = make_tree({{0, 1, 1}}, {vx(1, {{0, 3}}), vx(1)}, 0, 5);
  CHECK_THROWS_AS(solve_tree(bad), Error);
  auto cyc = make_directed_cycle({1, 1}, {vx(1), vx(1)}, 5);
  CHECK_THROWS_AS(solve_tree(cyc), Error);
}
