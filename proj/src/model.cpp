#include "orienteer/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace orienteer {

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::DirectedPath: return "directed_path";
    case Topology::DirectedCycle: return "directed_cycle";
    case Topology::UndirectedPath: return "undirected_path";
    case Topology::Tree: return "tree";
    case Topology::General: return "general";
  }
  return "unknown";
}

std::optional<Topology> topology_from_name(const std::string& name) {
  if (name == "directed_path") return Topology::DirectedPath;
  if (name == "directed_cycle") return Topology::DirectedCycle;
  if (name == "undirected_path") return Topology::UndirectedPath;
  if (name == "tree") return Topology::Tree;
  if (name == "general") return Topology::General;
  return std::nullopt;
}

bool Instance::has_windows() const {
  if (timewindowed) return true;
  for (const auto& v : vertices)
    if (!v.windows.empty()) return true;
  return false;
}

bool Instance::has_dynamic_edges() const {
  for (const auto& e : edges)
    if (e.activity.has_value()) return true;
  return false;
}

namespace {

std::vector<TimeWindow> merge_sorted(std::vector<TimeWindow> ws) {
  std::sort(ws.begin(), ws.end(), [](const TimeWindow& a, const TimeWindow& b) {
    return a.release != b.release ? a.release < b.release : a.deadline < b.deadline;
  });
  std::vector<TimeWindow> out;
  for (const auto& w : ws) {
    if (!out.empty() && w.release <= out.back().deadline + 1)
      out.back().deadline = std::max(out.back().deadline, w.deadline);
    else
      out.push_back(w);
  }
  return out;
}

bool directed_topology(Topology t) {
  return t == Topology::DirectedPath || t == Topology::DirectedCycle;
}

}  // namespace

Instance normalize(Instance inst) {
  const Time b = inst.budget;
  inst.timewindowed = inst.timewindowed || inst.has_windows();
  for (auto& v : inst.vertices) {
    std::vector<TimeWindow> kept;
    for (auto w : v.windows) {
      if (w.release > b) continue;  // entirely past the budget
      w.release = std::max<Time>(w.release, 0);
      w.deadline = std::min(w.deadline, b);
      if (w.release > w.deadline) continue;
      kept.push_back(w);
    }
    v.windows = merge_sorted(std::move(kept));
  }
  for (auto& e : inst.edges) {
    if (!e.activity) continue;
    std::vector<TimeWindow> kept;
    for (auto a : *e.activity) {
      if (a.release > a.deadline) continue;
      kept.push_back(a);
    }
    e.activity = merge_sorted(std::move(kept));
  }
  return inst;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  auto issue = [&rep](const std::string& s) { rep.issues.push_back(s); };

  if (inst.n < 1) issue("n must be at least 1");
  if ((int)inst.vertices.size() != inst.n)
    issue("vertices list size does not match n");
  if (inst.start < 0 || inst.start >= inst.n) issue("start vertex out of range");
  if (inst.budget < 0) issue("budget must be non-negative");
  if (inst.budget >= kValueLimit) issue("budget exceeds the 63-bit value limit");
  if (inst.n < 1) return rep;

  Profit total_profit = 0;
  for (size_t i = 0; i < inst.vertices.size(); ++i) {
    const auto& v = inst.vertices[i];
    if (v.profit < 0) issue("vertices[" + std::to_string(i) + "]: negative profit");
    if (v.profit >= kValueLimit)
      issue("vertices[" + std::to_string(i) + "]: profit exceeds value limit");
    total_profit += std::min(v.profit, kValueLimit - 1);
    Time prev_deadline = -2;
    for (size_t j = 0; j < v.windows.size(); ++j) {
      const auto& w = v.windows[j];
      const std::string at = "vertices[" + std::to_string(i) + "].windows[" + std::to_string(j) + "]";
      if (w.release < 0) issue(at + ": release must be non-negative");
      if (w.release > w.deadline) issue(at + ": release > deadline");
      if (w.deadline >= kValueLimit) issue(at + ": deadline exceeds value limit");
      if (w.deadline > inst.budget) issue(at + ": deadline past the budget (instance not normalized)");
      if (w.release <= prev_deadline + 1)
        issue(at + ": windows not sorted or not merged");
      prev_deadline = w.deadline;
    }
    if (total_profit >= kValueLimit) {
      issue("total profit exceeds the 63-bit value limit");
      total_profit = 0;
    }
  }

  Cost max_cost = 0;
  Cost total_cost = 0;
  std::set<std::pair<int, int>> seen_edges;
  for (size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    const std::string at = "edges[" + std::to_string(i) + "]";
    if (e.u < 0 || e.u >= inst.n || e.v < 0 || e.v >= inst.n) {
      issue(at + ": endpoint out of range");
      continue;
    }
    if (e.u == e.v) issue(at + ": self loop");
    if (e.cost < 0) issue(at + ": negative cost");
    if (e.cost >= kValueLimit) issue(at + ": cost exceeds value limit");
    max_cost = std::max(max_cost, e.cost);
    total_cost += std::min(e.cost, kValueLimit - 1);
    if (total_cost >= kValueLimit) {
      issue("total edge cost exceeds the 63-bit value limit");
      total_cost = 0;
    }
    auto key = directed_topology(inst.topology)
                   ? std::pair<int, int>{e.u, e.v}
                   : std::pair<int, int>{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (!seen_edges.insert(key).second) issue(at + ": duplicate edge");
    if (e.activity) {
      Time prev_deadline = -2;
      for (size_t j = 0; j < e.activity->size(); ++j) {
        const auto& a = (*e.activity)[j];
        const std::string wat = at + ".active[" + std::to_string(j) + "]";
        if (a.release < 0) issue(wat + ": start must be non-negative");
        if (a.release > a.deadline) issue(wat + ": start > end");
        if (a.deadline >= kValueLimit) issue(wat + ": end exceeds value limit");
        if (a.release <= prev_deadline + 1) issue(wat + ": intervals not sorted or not merged");
        prev_deadline = a.deadline;
      }
    }
  }
  if (inst.budget > kValueLimit - max_cost)
    issue("budget plus maximum edge cost overflows the value limit");

  // Topology-specific edge set checks.
  switch (inst.topology) {
    case Topology::DirectedPath: {
      if (inst.start != 0) issue("directed path must start at vertex 0");
      if ((int)inst.edges.size() != inst.n - 1)
        issue("topology mismatch: directed path needs exactly n-1 edges");
      std::vector<bool> present(std::max(inst.n - 1, 0), false);
      for (const auto& e : inst.edges)
        if (e.u >= 0 && e.u < inst.n - 1 && e.v == e.u + 1) present[e.u] = true;
      for (int i = 0; i + 1 < inst.n; ++i)
        if (i < (int)present.size() && !present[i])
          issue("topology mismatch: missing path edge " + std::to_string(i) + " -> " + std::to_string(i + 1));
      break;
    }
    case Topology::DirectedCycle: {
      if (inst.n < 2) issue("cycle requires n >= 2");
      if (inst.start != 0) issue("directed cycle must be rotated so that start = vertex 0");
      if ((int)inst.edges.size() != inst.n)
        issue("topology mismatch: directed cycle needs exactly n edges");
      std::vector<bool> present(inst.n, false);
      for (const auto& e : inst.edges)
        if (e.u >= 0 && e.u < inst.n && e.v == (e.u + 1) % inst.n && inst.n >= 2) present[e.u] = true;
      for (int i = 0; i < inst.n && inst.n >= 2; ++i)
        if (!present[i])
          issue("topology mismatch: missing cycle edge " + std::to_string(i) + " -> " + std::to_string((i + 1) % inst.n));
      break;
    }
    case Topology::UndirectedPath: {
      if ((int)inst.edges.size() != inst.n - 1)
        issue("topology mismatch: undirected path needs exactly n-1 edges");
      std::vector<bool> present(std::max(inst.n - 1, 0), false);
      for (const auto& e : inst.edges) {
        int lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
        if (lo >= 0 && hi == lo + 1 && lo < inst.n - 1) present[lo] = true;
      }
      for (int i = 0; i + 1 < inst.n; ++i)
        if (i < (int)present.size() && !present[i])
          issue("topology mismatch: missing path edge {" + std::to_string(i) + "," + std::to_string(i + 1) + "}");
      break;
    }
    case Topology::Tree: {
      if ((int)inst.edges.size() != inst.n - 1)
        issue("topology mismatch: tree needs exactly n-1 edges");
      // Connectivity via union-find.
      std::vector<int> parent(inst.n);
      for (int i = 0; i < inst.n; ++i) parent[i] = i;
      auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      bool cycle_found = false;
      for (const auto& e : inst.edges) {
        if (e.u < 0 || e.u >= inst.n || e.v < 0 || e.v >= inst.n) continue;
        int a = find(e.u), b = find(e.v);
        if (a == b) cycle_found = true;
        parent[a] = b;
      }
      if (cycle_found) issue("topology mismatch: tree contains a cycle");
      int roots = 0;
      for (int i = 0; i < inst.n; ++i)
        if (find(i) == i) ++roots;
      if (roots != 1) issue("topology mismatch: tree is not connected");
      break;
    }
    case Topology::General:
      break;
  }

  if (inst.decomposition && inst.topology != Topology::General)
    issue("decomposition may only be supplied for general topology");
  if (inst.decomposition) {
    const auto& dec = *inst.decomposition;
    for (size_t b = 0; b < dec.bags.size(); ++b)
      for (int v : dec.bags[b])
        if (v < 0 || v >= inst.n)
          issue("decomposition.bags[" + std::to_string(b) + "]: vertex out of range");
    for (const auto& [p, c] : dec.tree)
      if (p < 0 || p >= (int)dec.bags.size() || c < 0 || c >= (int)dec.bags.size())
        issue("decomposition.tree: bag index out of range");
  }
  return rep;
}

Instance require_valid(Instance inst) {
  inst = normalize(std::move(inst));
  auto rep = validate_instance(inst);
  if (!rep.valid()) {
    std::ostringstream os;
    os << "invalid instance:";
    for (const auto& s : rep.issues) os << " [" << s << "]";
    fail_input(os.str());
  }
  return inst;
}

namespace {

// Edge lookup keyed by ordered pair for directed topologies, unordered
// otherwise. Returns nullptr when the step is not an edge.
const EdgeSpec* find_edge(const Instance& inst, int u, int v) {
  for (const auto& e : inst.edges) {
    if (e.u == u && e.v == v) return &e;
    if (!directed_topology(inst.topology) && e.u == v && e.v == u) return &e;
  }
  return nullptr;
}

bool traversal_allowed(const EdgeSpec& e, Time depart, Time arrive) {
  if (!e.activity) return true;
  for (const auto& a : *e.activity)
    if (a.release <= depart && arrive <= a.deadline) return true;
  return false;
}

}  // namespace

WalkReport validate_walk(const Instance& inst, const Walk& walk) {
  WalkReport rep;
  auto fail = [&rep](const std::string& why) {
    rep.valid = false;
    rep.violation = why;
    return rep;
  };

  if (walk.visits.empty()) return fail("walk has no visits");
  const Visit& first = walk.visits.front();
  if (first.vertex != inst.start) return fail("walk does not begin at the start vertex");
  if (first.time < 0) return fail("negative start time");

  for (const auto& vis : walk.visits)
    if (vis.vertex < 0 || vis.vertex >= inst.n)
      return fail("visit vertex out of range");

  for (size_t i = 0; i + 1 < walk.visits.size(); ++i) {
    const Visit& a = walk.visits[i];
    const Visit& b = walk.visits[i + 1];
    if (a.vertex == b.vertex) {
      if (b.time <= a.time) return fail("wait step does not advance time");
      continue;
    }
    const EdgeSpec* e = find_edge(inst, a.vertex, b.vertex);
    if (e == nullptr) return fail("movement along a non-edge");
    if (b.time != a.time + e->cost) return fail("movement time mismatch");
    if (!traversal_allowed(*e, a.time, b.time)) return fail("edge inactive during traversal");
  }

  if (walk.visits.back().time > inst.budget) return fail("budget exceeded");

  rep.valid = true;
  rep.cost = walk.visits.back().time - first.time;

  const bool timewindowed = inst.has_windows();
  std::set<int> collected;
  if (!timewindowed) {
    for (const auto& vis : walk.visits) collected.insert(vis.vertex);
  } else {
    // Presence intervals: while waiting at a vertex the walk is present the
    // whole time, so a window overlapping the stay collects the vertex.
    for (size_t i = 0; i < walk.visits.size(); ++i) {
      const Visit& vis = walk.visits[i];
      Time until = vis.time;
      if (i + 1 < walk.visits.size() && walk.visits[i + 1].vertex == vis.vertex)
        until = walk.visits[i + 1].time;
      for (const auto& w : inst.vertices[vis.vertex].windows)
        if (w.release <= until && vis.time <= w.deadline) {
          collected.insert(vis.vertex);
          break;
        }
    }
  }
  rep.collected.assign(collected.begin(), collected.end());
  rep.profit = 0;
  for (int v : rep.collected) rep.profit += inst.vertices[v].profit;
  return rep;
}

Cost cycle_distance(const Instance& inst, int i, int j) {
  if (inst.topology != Topology::DirectedCycle)
    fail_input("cycle_distance requires a directed cycle");
  if (i < 0 || i >= inst.n || j < 0 || j >= inst.n)
    fail_input("cycle_distance: vertex out of range");
  if (i == j) return 0;
  std::vector<Cost> cost_from(inst.n, 0);
  for (const auto& e : inst.edges) cost_from[e.u] = e.cost;
  Cost total = 0;
  for (int v = i; v != j; v = (v + 1) % inst.n) total += cost_from[v];
  return total;
}

Cost cycle_length(const Instance& inst) {
  if (inst.topology != Topology::DirectedCycle)
    fail_input("cycle_length requires a directed cycle");
  Cost total = 0;
  for (const auto& e : inst.edges) total += e.cost;
  return total;
}

}  // namespace orienteer
