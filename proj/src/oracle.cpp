#include "orienteer/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orienteer {

namespace {

constexpr Cost kInf = kValueLimit;

bool directed(Topology t) {
  return t == Topology::DirectedPath || t == Topology::DirectedCycle;
}

std::vector<std::vector<Cost>> all_pairs_distances(const Instance& inst) {
  int n = inst.n;
  std::vector<std::vector<Cost>> d(n, std::vector<Cost>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : inst.edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.cost);
    if (!directed(inst.topology)) d[e.v][e.u] = std::min(d[e.v][e.u], e.cost);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (int j = 0; j < n; ++j) {
        if (d[k][j] == kInf) continue;
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  return d;
}

struct OutEdge {
  int to;
  Cost cost;
  const std::vector<TimeWindow>* activity;  // nullptr = always active
};

std::vector<std::vector<OutEdge>> adjacency(const Instance& inst) {
  std::vector<std::vector<OutEdge>> adj(inst.n);
  for (const auto& e : inst.edges) {
    const std::vector<TimeWindow>* act = e.activity ? &*e.activity : nullptr;
    adj[e.u].push_back({e.v, e.cost, act});
    if (!directed(inst.topology)) adj[e.v].push_back({e.u, e.cost, act});
  }
  for (auto& out : adj)
    std::sort(out.begin(), out.end(),
              [](const OutEdge& a, const OutEdge& b) { return a.to < b.to; });
  return adj;
}

// Earliest u >= t such that [u, u + cost] fits one activity interval, or
// nullopt. Always u = t for static edges.
std::optional<Time> earliest_departure(const OutEdge& e, Time t) {
  if (e.activity == nullptr) return t;
  std::optional<Time> best;
  for (const auto& a : *e.activity) {
    Time dep = std::max(t, a.release);
    if (dep + e.cost <= a.deadline && (!best || dep < *best)) best = dep;
  }
  return best;
}

struct Searcher {
  const Instance& inst;
  const OracleCaps& caps;
  std::vector<std::vector<OutEdge>> adj;
  std::vector<int> bit_of;       // vertex -> mask bit, -1 if carries no profit
  std::vector<Profit> bit_profit;
  int max_rounds = -1;           // departures from vertex 0 allowed, -1 = unlimited

  // Dominance memo: per (vertex, time), the (mask, rounds) pairs already
  // explored. A state is pruned when a recorded pair has a superset mask and
  // no more rounds used.
  std::map<std::pair<int, Time>, std::vector<std::pair<std::uint32_t, int>>> seen;
  std::size_t states = 0;

  std::vector<Visit> path;
  Profit best_profit = -1;
  std::vector<Visit> best_path;
  Profit total_available = 0;

  explicit Searcher(const Instance& i, const OracleCaps& c) : inst(i), caps(c) {
    adj = adjacency(inst);
    bit_of.assign(inst.n, -1);
    int bits = 0;
    const bool windowed = inst.has_windows();
    for (int v = 0; v < inst.n; ++v) {
      if (inst.vertices[v].profit <= 0) continue;
      // Windowless vertices of a time-window instance are uncollectible.
      if (windowed && inst.vertices[v].windows.empty()) continue;
      if (bits >= caps.max_profitable)
        fail_resource("oracle: more than " + std::to_string(caps.max_profitable) +
                      " collectible profit-bearing vertices");
      bit_of[v] = bits++;
      bit_profit.push_back(inst.vertices[v].profit);
      total_available += inst.vertices[v].profit;
    }
  }

  Profit mask_profit(std::uint32_t mask) const {
    Profit p = 0;
    for (size_t b = 0; b < bit_profit.size(); ++b)
      if (mask & (1u << b)) p += bit_profit[b];
    return p;
  }

  // Profits whose windows overlap the stay [t0, t1] at v.
  std::uint32_t collect_in(int v, Time t0, Time t1, std::uint32_t mask) const {
    if (bit_of[v] < 0) return mask;
    if (mask & (1u << bit_of[v])) return mask;
    if (!inst.has_windows()) return mask | (1u << bit_of[v]);
    for (const auto& w : inst.vertices[v].windows)
      if (w.release <= t1 && t0 <= w.deadline) return mask | (1u << bit_of[v]);
    return mask;
  }

  bool dominated(int v, Time t, std::uint32_t mask, int rounds) {
    auto& entries = seen[{v, t}];
    for (const auto& [m, r] : entries)
      if ((m & mask) == mask && r <= rounds) return true;
    // Drop entries the new state dominates to keep lists short.
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [&](const std::pair<std::uint32_t, int>& e) {
                                   return (e.first & mask) == e.first && rounds <= e.second;
                                 }),
                  entries.end());
    entries.emplace_back(mask, rounds);
    return false;
  }

  void consider(std::uint32_t mask) {
    Profit p = mask_profit(mask);
    if (p > best_profit) {
      best_profit = p;
      best_path = path;
    }
  }

  void dfs(int v, Time t, std::uint32_t mask, int rounds) {
    if (++states > caps.max_states) fail_resource("oracle: state cap exceeded");
    if (dominated(v, t, mask, rounds)) return;
    consider(mask);
    if (mask_profit(mask) == total_available) return;

    // Wait at v until a window release, collecting everything the stay spans.
    for (const auto& w : inst.vertices[v].windows) {
      Time u = std::max(t, w.release);
      if (u <= t || u > w.deadline || u > inst.budget) continue;
      std::uint32_t m2 = collect_in(v, t, u, mask);
      path.push_back({v, u});
      dfs(v, u, m2, rounds);
      path.pop_back();
    }

    // Move along an edge, departing as early as the edge allows.
    for (const auto& e : adj[v]) {
      auto dep = earliest_departure(e, t);
      if (!dep || *dep + e.cost > inst.budget) continue;
      int next_rounds = rounds;
      if (max_rounds >= 0 && v == inst.start && inst.topology == Topology::DirectedCycle) {
        ++next_rounds;
        if (next_rounds > max_rounds) continue;
      }
      std::uint32_t m2 = collect_in(v, t, *dep, mask);
      size_t base = path.size();
      if (*dep > t) path.push_back({v, *dep});
      Time arrive = *dep + e.cost;
      path.push_back({e.to, arrive});
      dfs(e.to, arrive, collect_in(e.to, arrive, arrive, m2), next_rounds);
      path.resize(base);
    }
  }

  Solution run() {
    path = {{inst.start, 0}};
    dfs(inst.start, 0, collect_in(inst.start, 0, 0, 0), 0);
    Solution sol;
    sol.profit = std::max<Profit>(best_profit, 0);
    sol.walk.visits = best_path.empty() ? std::vector<Visit>{{inst.start, 0}} : best_path;
    sol.algorithm = "oracle";
    return sol;
  }
};

}  // namespace

std::vector<Time> event_times(const Instance& inst, const OracleCaps& caps) {
  std::vector<Time> anchors{0};
  for (const auto& v : inst.vertices)
    for (const auto& w : v.windows) {
      anchors.push_back(w.release);
      anchors.push_back(w.deadline);
    }
  for (const auto& e : inst.edges)
    if (e.activity)
      for (const auto& a : *e.activity) {
        anchors.push_back(a.release);
        anchors.push_back(a.deadline);
      }

  auto dist = all_pairs_distances(inst);
  std::set<Cost> shifts{0};
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j)
      if (dist[i][j] < kInf) shifts.insert(dist[i][j]);

  std::vector<Cost> laps{0};
  if (inst.topology == Topology::DirectedCycle) {
    Cost c = cycle_length(inst);
    if (c > 0)
      for (Cost q = c; q <= inst.budget && (int)laps.size() <= 4 * inst.n; q += c)
        laps.push_back(q);
  }

  std::set<Time> out;
  for (Time a : anchors)
    for (Cost s : shifts)
      for (Cost lap : laps) {
        // Sums of three 62-bit values need headroom.
        for (__int128 t : {(__int128)a + s + lap, (__int128)a - s - lap}) {
          if (t < 0 || t > inst.budget) continue;
          out.insert((Time)t);
          if (out.size() > caps.max_event_times)
            fail_resource("event_times: cap exceeded");
        }
      }
  return {out.begin(), out.end()};
}

Solution oracle_op(const Instance& inst, const OracleCaps& caps) {
  Instance norm = require_valid(inst);
  Searcher s(norm, caps);
  return s.run();
}

Solution oracle_op_rounds(const Instance& inst, int max_rounds, const OracleCaps& caps) {
  Instance norm = require_valid(inst);
  if (norm.topology != Topology::DirectedCycle)
    fail_input("oracle_op_rounds requires a directed cycle");
  Searcher s(norm, caps);
  s.max_rounds = max_rounds;
  return s.run();
}

std::optional<Walk> oracle_cop(const Instance& inst, const OracleCaps& caps) {
  Instance norm = require_valid(inst);
  // Targets come from the raw windows: a vertex whose only window was
  // clipped away is required but uncollectible, so the answer is None.
  std::vector<int> targets;
  const bool windowed = inst.has_windows() || norm.has_windows();
  for (int v = 0; v < norm.n; ++v)
    if (!windowed || !inst.vertices[v].windows.empty()) targets.push_back(v);
  for (int v : targets)
    if (windowed && norm.vertices[v].windows.empty()) return std::nullopt;

  Instance unit = norm;
  for (int v = 0; v < unit.n; ++v) unit.vertices[v].profit = 0;
  for (int v : targets) unit.vertices[v].profit = 1;

  Searcher s(unit, caps);
  Solution sol = s.run();
  if (sol.profit != (Profit)targets.size()) return std::nullopt;
  return sol.walk;
}

}  // namespace orienteer
