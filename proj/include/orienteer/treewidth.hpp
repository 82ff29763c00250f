#pragma once

#include <vector>

#include "orienteer/model.hpp"

namespace orienteer {

struct TwCaps {
  int max_width = 6;                    // k^O(k) guard
  std::size_t max_states = 5'000'000;   // per-node table guard
};

// Rooted nice tree decomposition: leaf / introduce-vertex / introduce-edge /
// forget / join nodes, the start vertex kept in every bag, root and leaf
// bags equal {s}, every edge introduced exactly once.
struct NiceDecomposition {
  enum class Kind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };
  struct Node {
    Kind kind = Kind::Leaf;
    std::vector<int> bag;  // ascending vertex ids
    int child = -1;
    int child2 = -1;       // join only
    int vertex = -1;       // introduced / forgotten vertex
    int eu = -1, ev = -1;  // introduced edge
    Cost ecost = 0;
  };
  std::vector<Node> nodes;
  int root = -1;
  int width = 0;  // max bag size - 1
};

// From the instance's raw decomposition when supplied (validated, then
// s-augmented), otherwise from a min-fill elimination order.
NiceDecomposition build_nice_decomposition(const Instance& inst);

// Exact plain-OP solver over the decomposition: minimum walk-forest cost per
// (bag subset, connectivity partition, degree parities, banked endpoint,
// exact profit).
Solution solve_tw(const Instance& inst, const NiceDecomposition& dec, const TwCaps& caps = {});

// (1+epsilon)-approximation by profit scaling: for each candidate top
// profit, scale to pi' = floor(n^2 pi / pmax) + 1, solve exactly, and keep
// the walk that scores best under the original profits.
Solution approx_tw(const Instance& inst, const NiceDecomposition& dec, double epsilon,
                   const TwCaps& caps = {});

}  // namespace orienteer
