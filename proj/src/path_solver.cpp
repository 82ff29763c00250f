#include "orienteer/path_solver.hpp"

#include <algorithm>

#include "orienteer/envelope.hpp"

namespace orienteer {
namespace detail {

void RangeStabber::add(Time begin, Time end, int id) {
  if (begin >= end) return;
  entries_.push_back({begin, end, id});
}

void RangeStabber::build() {
  coords_.clear();
  for (const auto& e : entries_) {
    coords_.push_back(e.begin);
    coords_.push_back(e.end);
  }
  std::sort(coords_.begin(), coords_.end());
  coords_.erase(std::unique(coords_.begin(), coords_.end()), coords_.end());
  size_t leaves = std::max<size_t>(coords_.size(), 2) - 1;
  size_ = 1;
  while (size_ < leaves) size_ <<= 1;
  tree_.assign(2 * size_, {});
  for (const auto& e : entries_) {
    size_t lo = std::lower_bound(coords_.begin(), coords_.end(), e.begin) - coords_.begin();
    size_t hi = std::lower_bound(coords_.begin(), coords_.end(), e.end) - coords_.begin();
    for (lo += size_, hi += size_; lo < hi; lo >>= 1, hi >>= 1) {
      if (lo & 1) tree_[lo++].push_back(e.id);
      if (hi & 1) tree_[--hi].push_back(e.id);
    }
  }
  built_ = true;
}

int RangeStabber::latest_before(Time t, int bound) const {
  if (!built_ || coords_.size() < 2) return -1;
  if (t < coords_.front() || t >= coords_.back()) return -1;
  size_t leaf = (std::upper_bound(coords_.begin(), coords_.end(), t) - coords_.begin()) - 1;
  int best = -1;
  for (size_t x = leaf + size_; x >= 1; x >>= 1) {
    const auto& ids = tree_[x];
    auto jt = std::lower_bound(ids.begin(), ids.end(), bound);
    if (jt != ids.begin()) best = std::max(best, *std::prev(jt));
    if (x == 1) break;
  }
  return best;
}

}  // namespace detail

namespace {

struct WindowOp {
  int vertex;
  Time cap;  // rebased deadline: collection happens at min(end, cap)
};

}  // namespace

Solution solve_directed_path_mtw(const Instance& raw) {
  if (raw.topology != Topology::DirectedPath)
    fail_input("solve_directed_path_mtw requires a directed path");
  if (raw.n < 1) fail_input("solve_directed_path_mtw: empty instance");
  Instance inst = require_valid(raw);

  std::vector<Cost> edge_cost(std::max(inst.n - 1, 0), 0);
  for (const auto& e : inst.edges) edge_cost[e.u] = e.cost;

  if (!inst.has_windows()) {
    // Plain OP on a directed path: walk forward while the budget lasts.
    Solution sol;
    sol.algorithm = "path-mtw";
    sol.walk.visits = {{0, 0}};
    sol.profit = inst.vertices[0].profit;
    Time t = 0;
    for (int i = 0; i + 1 < inst.n && t + edge_cost[i] <= inst.budget; ++i) {
      t += edge_cost[i];
      sol.walk.visits.push_back({i + 1, t});
      sol.profit += inst.vertices[i + 1].profit;
    }
    while (sol.walk.visits.size() > 1 && inst.vertices[sol.walk.visits.back().vertex].profit == 0)
      sol.walk.visits.pop_back();
    return sol;
  }

  const Time horizon = inst.budget + 1;
  ProfitEnvelope env(horizon, 0, 0);

  std::vector<WindowOp> ops;
  detail::RangeStabber stabber;
  std::vector<int> ops_through_vertex(inst.n, 0);  // op count after vertex i

  Cost c = 0;
  Profit best_profit = 0;
  int best_vertex = 0;
  Time best_point = inst.budget;
  std::vector<Cost> dist_to(inst.n, 0);

  for (int i = 0; i < inst.n; ++i) {
    if (i > 0) {
      c += edge_cost[i - 1];
      if (c > inst.budget) {
        for (int j = i; j < inst.n; ++j) ops_through_vertex[j] = (int)ops.size();
        break;
      }
    }
    dist_to[i] = c;
    const auto& spec = inst.vertices[i];
    // Later windows first: the flood a window leaves behind must never feed a
    // second collection of the same vertex, and with descending releases every
    // lookup point min(t, deadline) lies left of the ranges already touched.
    for (auto it = spec.windows.rbegin(); it != spec.windows.rend(); ++it) {
      if (spec.profit == 0) break;
      Time d = it->deadline - c;
      if (d < 0) continue;
      Time r = std::max<Time>(it->release - c, 0);
      auto applied = env.apply_window(r, d, spec.profit);
      if (!applied.empty()) {
        stabber.add(applied.begin, applied.end, (int)ops.size());
        ops.push_back({i, d});
      }
    }
    ops_through_vertex[i] = (int)ops.size();
    Profit here = env.query(inst.budget - c);
    if (here > best_profit) {
      best_profit = here;
      best_vertex = i;
      best_point = inst.budget - c;
    }
  }

  // Witness: follow the decision chain backwards through the op log.
  stabber.build();
  std::vector<std::pair<int, Time>> collections;  // (vertex, real collect time)
  Time t = best_point;
  int bound = ops_through_vertex[best_vertex];
  while (true) {
    int id = stabber.latest_before(t, bound);
    if (id < 0) break;
    const WindowOp& op = ops[id];
    Time u = std::min(t, op.cap);
    collections.emplace_back(op.vertex, u + dist_to[op.vertex]);
    t = u;
    bound = id;
  }
  std::reverse(collections.begin(), collections.end());

  Solution sol;
  sol.algorithm = "path-mtw";
  sol.profit = best_profit;
  sol.walk.visits = {{inst.start, 0}};
  if (!collections.empty()) {
    Time now = 0;
    int pos = 0;
    for (const auto& [v, when] : collections) {
      while (pos < v) {
        now += edge_cost[pos];
        ++pos;
        sol.walk.visits.push_back({pos, now});
      }
      if (when > now) {
        sol.walk.visits.push_back({v, when});
        now = when;
      }
    }
  }
  return sol;
}

}  // namespace orienteer
