#include <doctest.h>

#include <random>

#include "orienteer/generators.hpp"
#include "orienteer/oracle.hpp"
#include "orienteer/tree_solver.hpp"
#include "orienteer/treewidth.hpp"
#include "support.hpp"

using namespace orienteer;
using namespace testsupport;

namespace {

Instance random_tw2(std::mt19937_64& rng, int max_n = 7, Profit max_profit = 4) {
  GenParams p;
  p.topology = Topology::General;
  p.n = 2 + (int)(rng() % (max_n - 1));
  p.cost_min = 1;
  p.cost_max = 3;
  p.profit_max = max_profit;
  p.windows_per_vertex = 0;
  p.budget_factor = 0.2 + (double)(rng() % 12) / 10.0;
  return gen_random(p, rng());
}

Instance tree_as_instance(std::mt19937_64& rng, int max_n = 8) {
  GenParams p;
  p.topology = Topology::Tree;
  p.n = 1 + (int)(rng() % max_n);
  p.cost_min = 1;
  p.cost_max = 3;
  p.profit_max = 4;
  p.windows_per_vertex = 0;
  p.budget_factor = 0.2 + (double)(rng() % 12) / 10.0;
  return gen_random(p, rng());
}

}  // namespace

TEST_CASE("nice decomposition of a path has small width") {
  auto path = make_undirected_path({1, 1, 1}, {vx(1), vx(1), vx(1), vx(1)}, 0, 9);
  Instance gen = path;
  gen.topology = Topology::General;
  auto dec = build_nice_decomposition(gen);
  CHECK(dec.width <= 2);  // 1 plus possibly the start augmentation
  int edge_nodes = 0;
  for (const auto& node : dec.nodes)
    if (node.kind == NiceDecomposition::Kind::IntroduceEdge) ++edge_nodes;
  CHECK(edge_nodes == 3);
  CHECK(dec.nodes[dec.root].bag == std::vector<int>{0});
}

TEST_CASE("nice decomposition of a triangle has width two") {
  Instance tri;
  tri.topology = Topology::General;
  tri.n = 3;
  tri.start = 0;
  tri.budget = 9;
  tri.vertices = {vx(1), vx(1), vx(1)};
  tri.edges = {{0, 1, 1, std::nullopt}, {1, 2, 1, std::nullopt}, {0, 2, 1, std::nullopt}};
  auto dec = build_nice_decomposition(tri);
  CHECK(dec.width == 2);
}

TEST_CASE("a supplied decomposition missing an edge is rejected") {
  Instance tri;
  tri.topology = Topology::General;
  tri.n = 3;
  tri.start = 0;
  tri.budget = 9;
  tri.vertices = {vx(1), vx(1), vx(1)};
  tri.edges = {{0, 1, 1, std::nullopt}, {1, 2, 1, std::nullopt}, {0, 2, 1, std::nullopt}};
  tri.decomposition = RawDecomposition{{{0, 1}, {1, 2}}, {{0, 1}}};
  try {
    build_nice_decomposition(tri);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(0,2)") != std::string::npos);
  }
}

TEST_CASE("solve_tw walks a four-cycle fully") {
  Instance c4;
  c4.topology = Topology::General;
  c4.n = 4;
  c4.start = 0;
  c4.budget = 4;
  c4.vertices = {vx(1), vx(1), vx(1), vx(1)};
  c4.edges = {{0, 1, 1, std::nullopt},
              {1, 2, 1, std::nullopt},
              {2, 3, 1, std::nullopt},
              {3, 0, 1, std::nullopt}};
  auto dec = build_nice_decomposition(c4);
  auto sol = solve_tw(c4, dec);
  CHECK(sol.profit == 4);
  CHECK(validate_walk(normalize(c4), sol.walk).valid);
}

TEST_CASE("zero budget keeps the start profit") {
  Instance tri;
  tri.topology = Topology::General;
  tri.n = 3;
  tri.start = 1;
  tri.budget = 0;
  tri.vertices = {vx(4), vx(7), vx(9)};
  tri.edges = {{0, 1, 1, std::nullopt}, {1, 2, 1, std::nullopt}, {0, 2, 1, std::nullopt}};
  auto dec = build_nice_decomposition(tri);
  CHECK(solve_tw(tri, dec).profit == 7);
}

TEST_CASE("solve_tw equals solve_tree on random trees") {
  std::mt19937_64 rng(4040);
  for (int iter = 0; iter < 200; ++iter) {
    auto tree = tree_as_instance(rng, 10);
    Instance gen = tree;
    gen.topology = Topology::General;
    auto dec = build_nice_decomposition(gen);
    CAPTURE(iter);
    auto a = solve_tw(gen, dec);
    auto b = solve_tree(tree);
    REQUIRE(a.profit == b.profit);
  }
}

TEST_CASE("solve_tw matches the oracle on treewidth-two graphs") {
  std::mt19937_64 rng(4141);
  for (int iter = 0; iter < 150; ++iter) {
    auto inst = random_tw2(rng);
    auto dec = build_nice_decomposition(inst);
    CHECK(dec.width <= 3);  // construction width 2 plus the start vertex
    CAPTURE(iter);
    auto sol = solve_tw(inst, dec);
    auto truth = oracle_op(inst);
    REQUIRE(sol.profit == truth.profit);
    auto rep = validate_walk(normalize(inst), sol.walk);
    REQUIRE(rep.valid);
    REQUIRE(rep.profit == sol.profit);
  }
}

TEST_CASE("solve_tw rejects oversized widths and windowed instances") {
  std::mt19937_64 rng(4242);
  auto inst = random_tw2(rng);
  auto dec = build_nice_decomposition(inst);
  TwCaps caps;
  caps.max_width = 1;
  if (dec.width > 2) CHECK_THROWS_AS(solve_tw(inst, dec, caps), Error);
  Instance windowed = inst;
  windowed.vertices[0].windows.push_back({0, 3});
  CHECK_THROWS_AS(solve_tw(windowed, dec), Error);
}

TEST_CASE("approx_tw delegates tiny instances to the oracle") {
  Instance two;
  two.topology = Topology::General;
  two.n = 2;
  two.start = 0;
  two.budget = 3;
  two.vertices = {vx(2), vx(9)};
  two.edges = {{0, 1, 2, std::nullopt}};
  auto dec = build_nice_decomposition(two);
  auto sol = approx_tw(two, dec, 0.1);
  CHECK(sol.profit == 11);
}

TEST_CASE("approx_tw is exact on unit profits") {
  std::mt19937_64 rng(4343);
  for (int iter = 0; iter < 40; ++iter) {
    auto inst = random_tw2(rng, 6);
    for (auto& v : inst.vertices) v.profit = 1;
    auto dec = build_nice_decomposition(inst);
    CAPTURE(iter);
    auto sol = approx_tw(inst, dec, 0.5);
    auto exact = solve_tw(inst, dec);
    REQUIRE(sol.profit == exact.profit);
  }
}

TEST_CASE("approx_tw meets the (1 - 1/n) guarantee on trees") {
  std::mt19937_64 rng(4444);
  for (int iter = 0; iter < 60; ++iter) {
    auto tree = tree_as_instance(rng, 8);
    Instance gen = tree;
    gen.topology = Topology::General;
    for (auto& v : gen.vertices) v.profit = (Profit)(rng() % 101);
    auto dec = build_nice_decomposition(gen);
    auto truth = oracle_op(gen);
    CAPTURE(iter);
    auto sol = approx_tw(gen, dec, 0.5);
    REQUIRE(sol.profit <= truth.profit);
    // profit >= ceil((1 - 1/n) * OPT) for n >= 1 + 1/eps, else exact.
    long long n = gen.n;
    if ((double)n < 1.0 + 1.0 / 0.5) {
      REQUIRE(sol.profit == truth.profit);
    } else {
      long long bound = (truth.profit * (n - 1) + n - 1) / n;  // ceil(OPT(n-1)/n)
      REQUIRE(sol.profit >= bound);
    }
    REQUIRE(validate_walk(normalize(gen), sol.walk).valid);
  }
}
