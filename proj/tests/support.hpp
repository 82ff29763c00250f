#pragma once

// Shared helpers for the unit and acceptance suites: terse instance
// builders, the naive array-backed envelope oracle, and a full integer-grid
// search that double-checks the event-time oracle at tiny scale.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "orienteer/model.hpp"

namespace testsupport {

using namespace orienteer;

inline Instance make_directed_path(std::vector<Cost> costs, std::vector<VertexSpec> vs, Time budget) {
  Instance inst;
  inst.topology = Topology::DirectedPath;
  inst.n = (int)vs.size();
  inst.start = 0;
  inst.budget = budget;
  inst.vertices = std::move(vs);
  for (size_t i = 0; i < costs.size(); ++i)
    inst.edges.push_back({(int)i, (int)i + 1, costs[i], std::nullopt});
  return inst;
}

inline Instance make_directed_cycle(std::vector<Cost> costs, std::vector<VertexSpec> vs, Time budget) {
  Instance inst;
  inst.topology = Topology::DirectedCycle;
  inst.n = (int)vs.size();
  inst.start = 0;
  inst.budget = budget;
  inst.vertices = std::move(vs);
  for (int i = 0; i < inst.n; ++i)
    inst.edges.push_back({i, (i + 1) % inst.n, costs[i], std::nullopt});
  return inst;
}

inline Instance make_undirected_path(std::vector<Cost> costs, std::vector<VertexSpec> vs, int start, Time budget) {
  Instance inst;
  inst.topology = Topology::UndirectedPath;
  inst.n = (int)vs.size();
  inst.start = start;
  inst.budget = budget;
  inst.vertices = std::move(vs);
  for (size_t i = 0; i < costs.size(); ++i)
    inst.edges.push_back({(int)i, (int)i + 1, costs[i], std::nullopt});
  return inst;
}

inline VertexSpec vx(Profit p, std::vector<TimeWindow> ws = {}) { return {p, std::move(ws)}; }

// Pointwise reference for the envelope semantic contract.
class NaiveEnvelope {
 public:
  NaiveEnvelope(Time horizon, Time release, Profit profit) : vals_(horizon, 0) {
    for (Time t = release; t < horizon; ++t) vals_[t] = profit;
  }
  Profit query(Time t) const { return vals_.at(t); }
  void apply_window(Time release, Time deadline, Profit profit) {
    std::vector<Profit> old = vals_;
    for (Time t = release; t < (Time)vals_.size(); ++t)
      vals_[t] = std::max(old[t], old[std::min(t, deadline)] + profit);
  }
  Time horizon() const { return (Time)vals_.size(); }

 private:
  std::vector<Profit> vals_;
};

// Exhaustive search over the full integer time grid; exponential, only for
// budgets of ~15 or less. Validates the event-time restriction of the oracle.
inline Profit grid_search_op(const Instance& inst) {
  Instance norm = require_valid(inst);
  const bool dir = norm.topology == Topology::DirectedPath || norm.topology == Topology::DirectedCycle;
  std::vector<std::vector<std::pair<int, const EdgeSpec*>>> adj(norm.n);
  for (const auto& e : norm.edges) {
    adj[e.u].push_back({e.v, &e});
    if (!dir) adj[e.v].push_back({e.u, &e});
  }
  std::vector<int> bit(norm.n, -1);
  std::vector<Profit> bitp;
  for (int v = 0; v < norm.n; ++v)
    if (norm.vertices[v].profit > 0) {
      bit[v] = (int)bitp.size();
      bitp.push_back(norm.vertices[v].profit);
    }
  auto collect = [&](int v, Time t, unsigned mask) -> unsigned {
    if (bit[v] < 0) return mask;
    if (!norm.has_windows()) return mask | (1u << bit[v]);
    for (const auto& w : norm.vertices[v].windows)
      if (w.release <= t && t <= w.deadline) return mask | (1u << bit[v]);
    return mask;
  };
  Profit best = 0;
  std::set<std::tuple<int, Time, unsigned>> seen;
  struct Item { int v; Time t; unsigned mask; };
  std::vector<Item> stack{{norm.start, 0, collect(norm.start, 0, 0)}};
  while (!stack.empty()) {
    auto [v, t, mask] = stack.back();
    stack.pop_back();
    if (!seen.insert({v, t, mask}).second) continue;
    Profit p = 0;
    for (size_t b = 0; b < bitp.size(); ++b)
      if (mask & (1u << b)) p += bitp[b];
    best = std::max(best, p);
    if (t + 1 <= norm.budget) stack.push_back({v, t + 1, collect(v, t + 1, mask)});
    for (auto [w, e] : adj[v]) {
      Time arrive = t + e->cost;
      if (arrive > norm.budget) continue;
      bool ok = !e->activity.has_value();
      if (!ok)
        for (const auto& a : *e->activity)
          if (a.release <= t && arrive <= a.deadline) { ok = true; break; }
      if (ok) stack.push_back({w, arrive, collect(w, arrive, mask)});
    }
  }
  return best;
}

}  // namespace testsupport
