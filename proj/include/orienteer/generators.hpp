#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orienteer/model.hpp"

namespace orienteer {

struct GenParams {
  Topology topology = Topology::DirectedPath;
  int n = 4;
  Cost cost_min = 1;
  Cost cost_max = 3;
  Profit profit_max = 5;
  int windows_per_vertex = 1;  // upper bound, drawn uniformly
  Time window_span = 6;        // maximal window length
  double budget_factor = 1.5;  // budget = factor * total edge cost (at least 1)
  bool dynamic = false;        // draw edge activity intervals
};

// Seed-deterministic random instance; always passes validate_instance.
// General instances are partial 2-trees and carry their construction's
// decomposition.
Instance gen_random(const GenParams& params, std::uint64_t seed);

struct LineTspJob {
  long long position;
  Time release;
  Time deadline;
};

struct LineTspInstance {
  Instance instance;
  int n_jobs;  // covering all jobs means collecting exactly this many vertices
};

// Unit-cost undirected path with windows scaled by n^2; intermediate chain
// vertices are uncollectible.
LineTspInstance from_line_tsp(std::vector<LineTspJob> jobs);

struct Clause {
  int a, b, c;  // signed 1-based literals
};

struct SatReduction {
  Instance instance;
  int variables;
  int clauses;
  // Maps a satisfying assignment to a covering walk.
  std::function<Walk(const std::vector<bool>&)> witness;
};

// Directed-cycle COP-MTW instance with degenerate windows encoding the
// clause structure; C = variables + clauses.
SatReduction from_3sat(int variables, const std::vector<Clause>& clauses);

struct PartitionReduction {
  Instance instance;
  long long m;
  long long t;
  Profit target;  // m + mT + 1
  // Maps index triples partitioning the multiset into a full-profit walk.
  std::function<Walk(const std::vector<std::array<int, 3>>&)> witness;
};

PartitionReduction from_3partition(const std::vector<long long>& integers);

struct KnapsackItem {
  long long size;   // must be even
  Profit value;
};

Instance from_knapsack(const std::vector<KnapsackItem>& items, Cost capacity);

// DIMACS CNF with exactly three literals per clause.
std::pair<int, std::vector<Clause>> parse_dimacs(const std::string& text);

}  // namespace orienteer
