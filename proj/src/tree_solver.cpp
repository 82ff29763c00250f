#include "orienteer/tree_solver.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace orienteer {

namespace {

struct Rooted {
  std::vector<std::vector<int>> children;
  std::vector<int> parent;
  std::vector<Cost> parent_cost;
  std::vector<int> order;  // children before parents
};

Rooted root_tree(const Instance& inst) {
  Rooted r;
  r.children.assign(inst.n, {});
  r.parent.assign(inst.n, -1);
  r.parent_cost.assign(inst.n, 0);
  std::vector<std::vector<std::pair<int, Cost>>> adj(inst.n);
  for (const auto& e : inst.edges) {
    adj[e.u].push_back({e.v, e.cost});
    adj[e.v].push_back({e.u, e.cost});
  }
  std::vector<int> stack{inst.start};
  std::vector<bool> seen(inst.n, false);
  seen[inst.start] = true;
  std::vector<int> dfs_order;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    dfs_order.push_back(v);
    for (auto [w, c] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      r.parent[w] = v;
      r.parent_cost[w] = c;
      r.children[v].push_back(w);
      stack.push_back(w);
    }
  }
  r.order = dfs_order;
  std::reverse(r.order.begin(), r.order.end());
  return r;
}

}  // namespace

Instance binarize_tree(const Instance& raw) {
  if (raw.topology != Topology::Tree) fail_input("binarize_tree requires a tree");
  Instance inst = require_valid(raw);
  Rooted rooted = root_tree(inst);

  Instance out = inst;
  out.edges.clear();
  // Rebuild edges parent->child, splitting fat nodes with auxiliary chains.
  std::vector<int> work;
  for (int v = 0; v < inst.n; ++v) work.push_back(v);
  std::vector<std::vector<std::pair<int, Cost>>> final_children(inst.n);
  for (int v = 0; v < inst.n; ++v)
    for (int w : rooted.children[v]) final_children[v].push_back({w, rooted.parent_cost[w]});

  for (size_t idx = 0; idx < work.size(); ++idx) {
    int v = work[idx];
    while (final_children[v].size() > 2) {
      // Keep the first child; move the rest under a fresh zero-cost helper.
      int aux = (int)out.vertices.size();
      out.vertices.push_back({0, {}});
      final_children.push_back({});
      work.push_back(aux);
      std::vector<std::pair<int, Cost>> rest(final_children[v].begin() + 1,
                                             final_children[v].end());
      final_children[aux] = std::move(rest);
      final_children[v].resize(1);
      final_children[v].push_back({aux, 0});
    }
  }
  out.n = (int)out.vertices.size();
  for (int v = 0; v < out.n; ++v)
    for (auto [w, c] : final_children[v]) out.edges.push_back({v, w, c, std::nullopt});
  return out;
}

Solution solve_tree(const Instance& raw) {
  if (raw.topology != Topology::Tree) fail_input("solve_tree requires a tree");
  Instance inst = require_valid(raw);
  if (inst.has_windows()) fail_input("solve_tree handles the plain OP only; windows present");

  Instance bin = binarize_tree(inst);
  Rooted rooted = root_tree(bin);

  Profit total = 0;
  for (const auto& v : bin.vertices) total += v.profit;
  const Profit P = total;
  const Cost inf = kValueLimit;

  // a[v][pi][parity]: minimal cost to collect exactly pi in v's subtree,
  // starting at v, with the walk closed (0) or open (1) at v.
  std::vector<std::vector<std::array<Cost, 2>>> a(
      bin.n, std::vector<std::array<Cost, 2>>((size_t)P + 1, {inf, inf}));
  // Decision record for the witness: which child splits realized the optimum.
  struct Choice {
    int kind = -1;  // 0: self only, 1: child A only, 2: child B only, 3: both
    Profit left = 0;
    int parity_a = 0, parity_b = 0;
  };
  std::vector<std::vector<std::array<Choice, 2>>> choice(
      bin.n, std::vector<std::array<Choice, 2>>((size_t)P + 1));

  for (int v : rooted.order) {
    const Profit pv = bin.vertices[v].profit;
    auto& av = a[v];
    av[pv][0] = av[pv][1] = 0;
    choice[v][pv][0].kind = 0;
    choice[v][pv][1].kind = 0;
    const auto& kids = rooted.children[v];
    if (kids.empty()) continue;
    int w1 = kids[0];
    int w2 = kids.size() > 1 ? kids[1] : -1;
    Cost c1 = rooted.parent_cost[w1];
    Cost c2 = w2 >= 0 ? rooted.parent_cost[w2] : 0;
    for (Profit pi = pv; pi <= P; ++pi) {
      Profit rest = pi - pv;
      // Closed at v: every used child branch is entered and left.
      {
        Cost& slot = av[pi][0];
        Choice& ch = choice[v][pi][0];
        if (a[w1][rest][0] < inf && a[w1][rest][0] + 2 * c1 < slot) {
          slot = a[w1][rest][0] + 2 * c1;
          ch = {1, 0, 0, 0};
        }
        if (w2 >= 0 && a[w2][rest][0] < inf && a[w2][rest][0] + 2 * c2 < slot) {
          slot = a[w2][rest][0] + 2 * c2;
          ch = {2, 0, 0, 0};
        }
        if (w2 >= 0)
          for (Profit j = 1; j < rest; ++j) {
            if (a[w1][j][0] >= inf || a[w2][rest - j][0] >= inf) continue;
            Cost cost = a[w1][j][0] + a[w2][rest - j][0] + 2 * c1 + 2 * c2;
            if (cost < slot) {
              slot = cost;
              ch = {3, j, 0, 0};
            }
          }
      }
      // Open at v: exactly one branch keeps the walk's loose end.
      {
        Cost& slot = av[pi][1];
        Choice& ch = choice[v][pi][1];
        if (a[w1][rest][1] < inf && a[w1][rest][1] + c1 < slot) {
          slot = a[w1][rest][1] + c1;
          ch = {1, 0, 1, 0};
        }
        if (w2 >= 0 && a[w2][rest][1] < inf && a[w2][rest][1] + c2 < slot) {
          slot = a[w2][rest][1] + c2;
          ch = {2, 0, 1, 0};
        }
        if (w2 >= 0)
          for (Profit j = 1; j < rest; ++j) {
            if (a[w1][j][1] < inf && a[w2][rest - j][0] < inf) {
              Cost cost = a[w1][j][1] + a[w2][rest - j][0] + c1 + 2 * c2;
              if (cost < slot) {
                slot = cost;
                ch = {3, j, 1, 0};
              }
            }
            if (a[w1][j][0] < inf && a[w2][rest - j][1] < inf) {
              Cost cost = a[w1][j][0] + a[w2][rest - j][1] + 2 * c1 + c2;
              if (cost < slot) {
                slot = cost;
                ch = {3, j, 0, 1};
              }
            }
          }
      }
    }
  }

  Profit best = 0;
  int best_parity = 0;
  for (Profit pi = 0; pi <= P; ++pi)
    for (int parity = 0; parity < 2; ++parity)
      if (a[bin.start][pi][parity] <= bin.budget && pi > best) {
        best = pi;
        best_parity = parity;
      }
  if (best == 0) {
    Solution sol;
    sol.algorithm = "tree-dp";
    sol.profit = 0;
    sol.walk.visits = {{inst.start, 0}};
    return sol;
  }

  // Witness: expand choices into a visit sequence on the binarized tree,
  // then strip the auxiliary vertices (they sit at zero distance from their
  // parents).
  std::vector<int> route;  // vertex sequence, auxiliary ids included
  std::function<void(int, Profit, int)> expand = [&](int v, Profit pi, int parity) {
    route.push_back(v);
    const Choice& ch = choice[v][pi][parity];
    if (ch.kind <= 0) return;
    const auto& kids = rooted.children[v];
    int w1 = kids[0];
    int w2 = kids.size() > 1 ? kids[1] : -1;
    Profit rest = pi - bin.vertices[v].profit;
    auto go = [&](int child, Profit cp, int cparity) {
      expand(child, cp, cparity);
      if (cparity == 0) route.push_back(v);
    };
    if (ch.kind == 1) go(w1, rest, parity);
    if (ch.kind == 2) go(w2, rest, parity);
    if (ch.kind == 3) {
      // Closed branch first so the loose end stays last.
      if (ch.parity_a == 0 && ch.parity_b == 0) {
        go(w1, ch.left, 0);
        go(w2, rest - ch.left, 0);
      } else if (ch.parity_a == 1) {
        go(w2, rest - ch.left, 0);
        go(w1, ch.left, 1);
      } else {
        go(w1, ch.left, 0);
        go(w2, rest - ch.left, 1);
      }
    }
  };
  expand(bin.start, best, best_parity);

  // Map auxiliary vertices onto their closest real ancestor.
  std::vector<int> real_for(bin.n);
  for (int v = 0; v < bin.n; ++v) real_for[v] = v < inst.n ? v : -1;
  {
    std::function<int(int)> resolve = [&](int v) -> int {
      if (real_for[v] >= 0) return real_for[v];
      return real_for[v] = resolve(rooted.parent[v]);
    };
    for (int v = 0; v < bin.n; ++v) resolve(v);
  }

  std::map<std::pair<int, int>, Cost> edge_cost;
  for (const auto& e : inst.edges) {
    edge_cost[{e.u, e.v}] = e.cost;
    edge_cost[{e.v, e.u}] = e.cost;
  }

  Solution sol;
  sol.algorithm = "tree-dp";
  sol.profit = best;
  Time t = 0;
  int prev = inst.start;
  sol.walk.visits = {{inst.start, 0}};
  for (int raw_v : route) {
    int v = real_for[raw_v];
    if (v == prev) continue;
    auto it = edge_cost.find({prev, v});
    if (it == edge_cost.end()) fail_internal("tree-dp: witness step is not an edge");
    t += it->second;
    sol.walk.visits.push_back({v, t});
    prev = v;
  }
  auto rep = validate_walk(inst, sol.walk);
  if (!rep.valid || rep.profit != sol.profit) fail_internal("tree-dp: witness mismatch");
  return sol;
}

}  // namespace orienteer
