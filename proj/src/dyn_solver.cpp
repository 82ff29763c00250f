#include "orienteer/dyn_solver.hpp"

#include <algorithm>

namespace orienteer {

namespace {

// Path/cycle edge lookup: the edge between consecutive indices u and
// (u+1) mod n, regardless of the stored (u, v) orientation.
const EdgeSpec* chain_edge(const Instance& inst, int u, int next) {
  for (const auto& e : inst.edges) {
    if (e.u == u && e.v == next) return &e;
    if (e.u == next && e.v == u) return &e;
  }
  return nullptr;
}

std::optional<Time> edge_departure(const EdgeSpec& e, Time t, Time budget) {
  if (!e.activity) return t + e.cost <= budget ? std::optional<Time>(t) : std::nullopt;
  std::optional<Time> best;
  for (const auto& a : *e.activity) {
    Time dep = std::max(t, a.release);
    if (dep + e.cost <= a.deadline && dep + e.cost <= budget && (!best || dep < *best))
      best = dep;
  }
  return best;
}

void require_no_vertex_windows(const Instance& inst) {
  if (inst.has_windows())
    fail_input("dynamic-graph solvers handle the plain OP only; vertex windows present");
}

}  // namespace

std::optional<Time> earliest_arrival(const Instance& inst, int from, int to, Time depart,
                                     Direction direction) {
  Instance norm = require_valid(inst);
  if (from < 0 || from >= norm.n || to < 0 || to >= norm.n)
    fail_input("earliest_arrival: vertex out of range");
  int step;
  switch (norm.topology) {
    case Topology::UndirectedPath:
      if (direction == Direction::Forward)
        fail_input("earliest_arrival: undirected path needs Left or Right");
      step = direction == Direction::Right ? 1 : -1;
      if ((direction == Direction::Right && to < from) ||
          (direction == Direction::Left && to > from))
        fail_input("earliest_arrival: target lies against the direction");
      break;
    case Topology::DirectedPath:
      if (direction != Direction::Forward)
        fail_input("earliest_arrival: directed topology is Forward only");
      if (to < from) fail_input("earliest_arrival: target behind a directed path walk");
      step = 1;
      break;
    case Topology::DirectedCycle:
      if (direction != Direction::Forward)
        fail_input("earliest_arrival: directed topology is Forward only");
      step = 1;
      break;
    default:
      fail_input("earliest_arrival: unsupported topology");
  }

  Time t = depart;
  int at = from;
  while (at != to) {
    int next = norm.topology == Topology::DirectedCycle ? (at + 1) % norm.n : at + step;
    const EdgeSpec* e = chain_edge(norm, at, next);
    if (e == nullptr) fail_internal("earliest_arrival: missing chain edge");
    auto dep = edge_departure(*e, t, norm.budget);
    if (!dep) return std::nullopt;
    t = *dep + e->cost;
    at = next;
  }
  return t;
}

Solution solve_dyn_undirected_path(const Instance& raw) {
  if (raw.topology != Topology::UndirectedPath)
    fail_input("solve_dyn_undirected_path requires an undirected path");
  Instance inst = require_valid(raw);
  require_no_vertex_windows(inst);
  const int s = inst.start;

  // Simulate one monotone sweep, returning per-vertex arrival times while
  // they stay within the budget.
  auto sweep = [&](int from, int to, Time t0) -> std::optional<Time> {
    if (from == to) return t0;
    Direction dir = to > from ? Direction::Right : Direction::Left;
    return earliest_arrival(inst, from, to, t0, dir);
  };

  Solution best;
  best.algorithm = "dyn-path";
  best.profit = inst.vertices[s].profit;
  best.walk.visits = {{s, 0}};

  auto consider = [&](int i, int j, bool left_first) {
    int first = left_first ? i : j;
    int second = left_first ? j : i;
    auto t1 = sweep(s, first, 0);
    if (!t1) return;
    auto t2 = sweep(first, second, *t1);
    if (!t2) return;
    Profit profit = 0;
    for (int v = i; v <= j; ++v) profit += inst.vertices[v].profit;
    if (profit <= best.profit) return;

    // Rebuild the witness with explicit waits.
    Walk walk;
    walk.visits = {{s, 0}};
    Time t = 0;
    int at = s;
    auto run_to = [&](int target) {
      int step = target > at ? 1 : -1;
      while (at != target) {
        int next = at + step;
        const EdgeSpec* e = chain_edge(inst, at, next);
        auto dep = edge_departure(*e, t, inst.budget);
        if (!dep) fail_internal("dyn-path: sweep became infeasible during rebuild");
        if (*dep > t) walk.visits.push_back({at, *dep});
        t = *dep + e->cost;
        at = next;
        walk.visits.push_back({at, t});
      }
    };
    run_to(first);
    run_to(second);
    best.profit = profit;
    best.walk = walk;
  };

  for (int i = 0; i <= s; ++i)
    for (int j = s; j < inst.n; ++j) {
      if (i == j) continue;
      consider(i, j, true);
      consider(i, j, false);
    }
  auto rep = validate_walk(inst, best.walk);
  if (!rep.valid || rep.profit != best.profit)
    fail_internal("dyn-path: witness mismatch");
  return best;
}

Solution solve_dyn_directed_chain(const Instance& raw) {
  if (raw.topology != Topology::DirectedPath && raw.topology != Topology::DirectedCycle)
    fail_input("solve_dyn_directed_chain requires a directed path or cycle");
  Instance inst = require_valid(raw);
  require_no_vertex_windows(inst);

  Solution sol;
  sol.algorithm = "dyn-chain";
  sol.walk.visits = {{inst.start, 0}};
  sol.profit = inst.vertices[inst.start].profit;
  std::vector<bool> seen(inst.n, false);
  seen[inst.start] = true;
  int at = inst.start;
  Time t = 0;
  int visited = 1;
  while (visited < inst.n) {
    int next = inst.topology == Topology::DirectedCycle ? (at + 1) % inst.n : at + 1;
    if (next >= inst.n) break;
    const EdgeSpec* e = chain_edge(inst, at, next);
    if (e == nullptr) break;
    auto dep = edge_departure(*e, t, inst.budget);
    if (!dep) break;
    if (*dep > t) sol.walk.visits.push_back({at, *dep});
    t = *dep + e->cost;
    at = next;
    sol.walk.visits.push_back({at, t});
    if (!seen[at]) {
      seen[at] = true;
      ++visited;
      sol.profit += inst.vertices[at].profit;
    }
  }
  // Trim trailing waits and movements that added no profit.
  while (sol.walk.visits.size() > 1) {
    const Visit& last = sol.walk.visits.back();
    const Visit& prev = sol.walk.visits[sol.walk.visits.size() - 2];
    if (prev.vertex == last.vertex) {
      sol.walk.visits.pop_back();
      continue;
    }
    bool earlier = false;
    for (size_t i = 0; i + 1 < sol.walk.visits.size(); ++i)
      if (sol.walk.visits[i].vertex == last.vertex) earlier = true;
    if (inst.vertices[last.vertex].profit == 0 || earlier) {
      sol.walk.visits.pop_back();
      continue;
    }
    break;
  }
  auto rep = validate_walk(inst, sol.walk);
  if (!rep.valid || rep.profit != sol.profit) fail_internal("dyn-chain: witness mismatch");
  return sol;
}

}  // namespace orienteer
