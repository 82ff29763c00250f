#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orienteer {

using Time = std::int64_t;
using Cost = std::int64_t;
using Profit = std::int64_t;

// All times, costs and profits must stay below this bound so that sums of
// the form budget + cost and total profit fit comfortably in 63 bits.
inline constexpr std::int64_t kValueLimit = std::int64_t{1} << 62;

enum class Topology { DirectedPath, DirectedCycle, UndirectedPath, Tree, General };

std::string topology_name(Topology t);
std::optional<Topology> topology_from_name(const std::string& name);

enum class ErrorKind { Input, Resource, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& detail) {
  throw Error(ErrorKind::Input, detail);
}
[[noreturn]] inline void fail_resource(const std::string& detail) {
  throw Error(ErrorKind::Resource, detail);
}
[[noreturn]] inline void fail_internal(const std::string& detail) {
  throw Error(ErrorKind::Internal, detail);
}

struct TimeWindow {
  Time release = 0;
  Time deadline = 0;
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct VertexSpec {
  Profit profit = 0;
  std::vector<TimeWindow> windows;  // sorted by release, disjoint after normalize
  friend bool operator==(const VertexSpec&, const VertexSpec&) = default;
};

struct EdgeSpec {
  int u = 0;
  int v = 0;
  Cost cost = 0;
  // Absent means the edge is always traversable. Present intervals are sorted
  // and disjoint after normalization; a traversal [t, t+cost] must fit inside
  // a single interval.
  std::optional<std::vector<TimeWindow>> activity;
  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

struct RawDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree;  // (parent bag, child bag)
  friend bool operator==(const RawDecomposition&, const RawDecomposition&) = default;
};

struct Instance {
  Topology topology = Topology::DirectedPath;
  int n = 0;
  int start = 0;
  Time budget = 0;
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  std::optional<RawDecomposition> decomposition;
  // Set by normalize() when the raw instance carried vertex windows, so an
  // instance whose windows were all clipped away stays a time-window
  // instance (nothing collectible) instead of degrading to the plain OP.
  bool timewindowed = false;

  bool has_windows() const;
  bool has_dynamic_edges() const;
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Visit {
  int vertex = 0;
  Time time = 0;
  friend bool operator==(const Visit&, const Visit&) = default;
};

struct Walk {
  std::vector<Visit> visits;
  friend bool operator==(const Walk&, const Walk&) = default;
};

struct WalkReport {
  bool valid = false;
  Cost cost = 0;
  std::vector<int> collected;  // ascending vertex ids
  Profit profit = 0;
  std::optional<std::string> violation;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool valid() const { return issues.empty(); }
};

struct Solution {
  Profit profit = 0;
  Walk walk;
  std::string algorithm;
};

// Clips windows to [0, budget] (dropping windows entirely past the budget),
// sorts and merges vertex windows and edge activity intervals. Idempotent.
Instance normalize(Instance inst);

// Reports every invariant violation; never throws. A clean report on a
// normalized instance certifies all Instance invariants.
ValidationReport validate_instance(const Instance& inst);

// Normalizes and validates; throws an Input error listing the issues.
Instance require_valid(Instance inst);

// Checks walk invariants and scores the walk. A vertex's profit is collected
// if the walk is present at the vertex at some time inside one of its windows
// (waiting counts as presence); in an instance without any vertex windows
// every visited vertex is collected.
WalkReport validate_walk(const Instance& inst, const Walk& walk);

// Cost of the directed arc from vertex i to vertex j (0 if i == j).
Cost cycle_distance(const Instance& inst, int i, int j);
// Total cost of one full traversal of the cycle.
Cost cycle_length(const Instance& inst);

}  // namespace orienteer
