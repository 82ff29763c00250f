#include "orienteer/treewidth.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "orienteer/oracle.hpp"

namespace orienteer {

namespace {

bool undirected_graph(Topology t) {
  return t == Topology::Tree || t == Topology::General || t == Topology::UndirectedPath;
}

// Bags from a min-fill elimination order; parent of a bag is the bag of the
// earliest-eliminated later neighbour.
std::pair<std::vector<std::vector<int>>, std::vector<std::pair<int, int>>> min_fill_bags(
    const Instance& inst) {
  const int n = inst.n;
  std::vector<std::set<int>> adj(n);
  for (const auto& e : inst.edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<bool> gone(n, false);
  std::vector<int> order;
  std::vector<std::vector<int>> bags;
  for (int round = 0; round < n; ++round) {
    int best = -1;
    long long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long long fill = 0;
      std::vector<int> nb(adj[v].begin(), adj[v].end());
      for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]].count(nb[j])) ++fill;
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    std::vector<int> bag{best};
    for (int w : adj[best]) bag.push_back(w);
    std::sort(bag.begin(), bag.end());
    bags.push_back(bag);
    order.push_back(best);
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (int w : nb) adj[w].erase(best);
    gone[best] = true;
  }
  std::vector<int> when(n);
  for (int i = 0; i < n; ++i) when[order[i]] = i;
  std::vector<std::pair<int, int>> tree;
  for (int i = 0; i < n; ++i) {
    int parent = -1;
    for (int w : bags[i])
      if (w != order[i] && when[w] > i && (parent < 0 || when[w] < parent)) parent = when[w];
    if (parent >= 0)
      tree.push_back({parent, i});
    else if (i != n - 1)
      tree.push_back({n - 1, i});  // keep disconnected components in one bag tree
  }
  return {bags, tree};
}

void validate_raw_decomposition(const Instance& inst, const RawDecomposition& dec) {
  const int bags = (int)dec.bags.size();
  if (bags == 0) fail_input("decomposition: no bags");
  std::vector<std::vector<int>> adj(bags);
  for (auto [p, c] : dec.tree) {
    if (p < 0 || p >= bags || c < 0 || c >= bags)
      fail_input("decomposition: tree references a missing bag");
    adj[p].push_back(c);
    adj[c].push_back(p);
  }
  if ((int)dec.tree.size() != bags - 1)
    fail_input("decomposition: bag tree must have exactly bags-1 edges");
  std::vector<bool> seen(bags, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    for (int c : adj[b])
      if (!seen[c]) {
        seen[c] = true;
        ++reached;
        stack.push_back(c);
      }
  }
  if (reached != bags) fail_input("decomposition: bag tree is not connected");

  for (int v = 0; v < inst.n; ++v) {
    std::vector<int> holding;
    for (int b = 0; b < bags; ++b)
      if (std::count(dec.bags[b].begin(), dec.bags[b].end(), v)) holding.push_back(b);
    if (holding.empty())
      fail_input("decomposition: vertex " + std::to_string(v) + " is in no bag");
    std::set<int> hold(holding.begin(), holding.end());
    std::set<int> comp{holding[0]};
    std::vector<int> st{holding[0]};
    while (!st.empty()) {
      int b = st.back();
      st.pop_back();
      for (int c : adj[b])
        if (hold.count(c) && !comp.count(c)) {
          comp.insert(c);
          st.push_back(c);
        }
    }
    if (comp.size() != hold.size())
      fail_input("decomposition: bags containing vertex " + std::to_string(v) +
                 " are not connected");
  }
  for (const auto& e : inst.edges) {
    bool found = false;
    for (int b = 0; b < bags && !found; ++b)
      if (std::count(dec.bags[b].begin(), dec.bags[b].end(), e.u) &&
          std::count(dec.bags[b].begin(), dec.bags[b].end(), e.v))
        found = true;
    if (!found)
      fail_input("decomposition: no bag contains both endpoints of edge (" +
                 std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  }
}

}  // namespace

NiceDecomposition build_nice_decomposition(const Instance& raw) {
  if (!undirected_graph(raw.topology))
    fail_input("build_nice_decomposition requires a tree or general instance");
  Instance inst = require_valid(raw);

  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree;
  if (inst.decomposition) {
    validate_raw_decomposition(inst, *inst.decomposition);
    bags = inst.decomposition->bags;
    tree = inst.decomposition->tree;
  } else {
    std::tie(bags, tree) = min_fill_bags(inst);
  }

  // s-augmentation; duplicate removal inside bags.
  for (auto& bag : bags) {
    bag.push_back(inst.start);
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  }

  const int nbags = (int)bags.size();
  std::vector<std::vector<int>> children(nbags);
  std::vector<int> parent(nbags, -1);
  {
    std::vector<std::vector<int>> adj(nbags);
    for (auto [p, c] : tree) {
      adj[p].push_back(c);
      adj[c].push_back(p);
    }
    std::vector<int> stack{0};
    std::vector<bool> seen(nbags, false);
    seen[0] = true;
    while (!stack.empty()) {
      int b = stack.back();
      stack.pop_back();
      for (int c : adj[b])
        if (!seen[c]) {
          seen[c] = true;
          parent[c] = b;
          children[b].push_back(c);
          stack.push_back(c);
        }
    }
  }

  NiceDecomposition dec;
  auto add_node = [&dec](NiceDecomposition::Node node) {
    dec.nodes.push_back(std::move(node));
    return (int)dec.nodes.size() - 1;
  };

  // Chain from `from` bag-contents to `to` bag-contents on top of node id.
  auto morph = [&](int below, const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> cur = from;
    std::vector<int> leaving, entering;
    for (int v : from)
      if (!std::count(to.begin(), to.end(), v)) leaving.push_back(v);
    for (int v : to)
      if (!std::count(from.begin(), from.end(), v)) entering.push_back(v);
    for (int v : leaving) {
      cur.erase(std::remove(cur.begin(), cur.end(), v), cur.end());
      NiceDecomposition::Node node;
      node.kind = NiceDecomposition::Kind::Forget;
      node.vertex = v;
      node.bag = cur;
      node.child = below;
      below = add_node(std::move(node));
    }
    for (int v : entering) {
      cur.push_back(v);
      std::sort(cur.begin(), cur.end());
      NiceDecomposition::Node node;
      node.kind = NiceDecomposition::Kind::IntroduceVertex;
      node.vertex = v;
      node.bag = cur;
      node.child = below;
      below = add_node(std::move(node));
    }
    return below;
  };

  std::function<int(int)> build = [&](int b) -> int {
    std::vector<int> sub_tops;
    for (int c : children[b]) {
      int sub = build(c);
      sub_tops.push_back(morph(sub, bags[c], bags[b]));
    }
    if (sub_tops.empty()) {
      NiceDecomposition::Node leaf;
      leaf.kind = NiceDecomposition::Kind::Leaf;
      leaf.bag = {inst.start};
      int id = add_node(std::move(leaf));
      return morph(id, {inst.start}, bags[b]);
    }
    int acc = sub_tops[0];
    for (size_t i = 1; i < sub_tops.size(); ++i) {
      NiceDecomposition::Node join;
      join.kind = NiceDecomposition::Kind::Join;
      join.bag = bags[b];
      join.child = acc;
      join.child2 = sub_tops[i];
      acc = add_node(std::move(join));
    }
    return acc;
  };

  int top = build(0);
  dec.root = morph(top, bags[0], {inst.start});

  // Splice one introduce-edge node per edge above some node holding both
  // endpoints. Later splices may sit on top of earlier ones.
  for (const auto& e : inst.edges) {
    int host = -1;
    for (size_t t = 0; t < dec.nodes.size() && host < 0; ++t) {
      const auto& bag = dec.nodes[t].bag;
      if (std::count(bag.begin(), bag.end(), e.u) && std::count(bag.begin(), bag.end(), e.v))
        host = (int)t;
    }
    if (host < 0) fail_internal("nice decomposition: no bag hosts an edge");
    NiceDecomposition::Node node;
    node.kind = NiceDecomposition::Kind::IntroduceEdge;
    node.bag = dec.nodes[host].bag;
    node.child = host;
    node.eu = e.u;
    node.ev = e.v;
    node.ecost = e.cost;
    int id = (int)dec.nodes.size();
    // Rewire whatever pointed at `host` to point at the new node first.
    for (size_t t = 0; t < dec.nodes.size(); ++t) {
      if (dec.nodes[t].child == host) dec.nodes[t].child = id;
      if (dec.nodes[t].child2 == host) dec.nodes[t].child2 = id;
    }
    if (dec.root == host) dec.root = id;
    dec.nodes.push_back(std::move(node));
  }

  dec.width = 0;
  for (const auto& node : dec.nodes)
    dec.width = std::max(dec.width, (int)node.bag.size() - 1);
  return dec;
}

// ---------------------------------------------------------------------------
// The partition/parity dynamic program

namespace {

struct StateKey {
  std::uint32_t used = 0;    // bag positions in X
  std::uint32_t parity = 0;  // odd-degree bag positions
  std::uint8_t banked = 0;   // a buried walk endpoint exists
  std::uint64_t blocks = 0;  // RGS nibble per used position
  Profit profit = 0;
  auto operator<=>(const StateKey&) const = default;
};

struct Prov {
  StateKey a;
  StateKey b;
  bool has_a = false;
  bool has_b = false;
  int edge_copies = 0;
};

struct Entry {
  Cost cost = kValueLimit;
  Prov prov;
};

using Table = std::map<StateKey, Entry>;

// Canonical restricted-growth relabeling of per-position block labels; only
// positions in `used` carry nibbles.
std::uint64_t canon_blocks(const std::vector<int>& label, std::uint32_t used) {
  std::uint64_t packed = 0;
  int next = 0;
  int remap[64];
  for (int& r : remap) r = -1;
  for (size_t p = 0; p < label.size(); ++p) {
    if (!(used >> p & 1)) continue;
    int l = label[p];
    if (l < 0 || l >= 64) fail_internal("tw: block label out of range");
    if (remap[l] < 0) remap[l] = next++;
    packed |= (std::uint64_t)remap[l] << (4 * p);
  }
  return packed;
}

std::vector<int> unpack_blocks(std::uint64_t packed, std::uint32_t used, int bag_size) {
  std::vector<int> label(bag_size, -1);
  for (int p = 0; p < bag_size; ++p)
    if (used >> p & 1) label[p] = (int)(packed >> (4 * p) & 0xf);
  return label;
}

void upsert(Table& table, const StateKey& key, Cost cost, const Prov& prov) {
  auto it = table.find(key);
  if (it == table.end() || cost < it->second.cost) table[key] = {cost, prov};
}

int position_of(const std::vector<int>& bag, int v) {
  auto it = std::lower_bound(bag.begin(), bag.end(), v);
  return it != bag.end() && *it == v ? (int)(it - bag.begin()) : -1;
}

struct TwSolver {
  const Instance& inst;
  const NiceDecomposition& dec;
  const TwCaps& caps;
  std::vector<Table> tables;
  std::size_t peak_states = 0;

  TwSolver(const Instance& i, const NiceDecomposition& d, const TwCaps& c)
      : inst(i), dec(d), caps(c) {}

  // Translate a child-bag-indexed key into the parent bag's positions.
  StateKey translate(const StateKey& key, const std::vector<int>& from,
                     const std::vector<int>& to) const {
    StateKey out;
    out.banked = key.banked;
    out.profit = key.profit;
    std::vector<int> label(to.size(), -1);
    auto from_labels = unpack_blocks(key.blocks, key.used, (int)from.size());
    for (size_t p = 0; p < from.size(); ++p) {
      int q = position_of(to, from[p]);
      if (q < 0) {
        if (key.used >> p & 1) fail_internal("tw: dropping a used vertex in translate");
        continue;
      }
      if (key.used >> p & 1) {
        out.used |= 1u << q;
        label[q] = from_labels[p];
      }
      if (key.parity >> p & 1) out.parity |= 1u << q;
    }
    out.blocks = canon_blocks(label, out.used);
    return out;
  }

  void run() {
    tables.assign(dec.nodes.size(), {});
    // Children first.
    std::vector<int> order;
    std::vector<int> stack{dec.root};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      order.push_back(t);
      const auto& node = dec.nodes[t];
      if (node.child >= 0) stack.push_back(node.child);
      if (node.child2 >= 0) stack.push_back(node.child2);
    }
    std::reverse(order.begin(), order.end());
    Profit total_profit = 0;
    for (const auto& v : inst.vertices) total_profit += v.profit;
    for (int t : order) {
      compute(t);
      peak_states = std::max(peak_states, tables[t].size());
      if (tables[t].size() > caps.max_states)
        fail_resource("solve_tw: state table exceeded the cap");
#ifndef NDEBUG
      // Subset x partition x parity x banked x exact-profit count; the parity
      // and endpoint dimensions widen the classical partition bound.
      {
        double b = (double)dec.nodes[t].bag.size();
        double bound = std::pow(2.0, b) * std::pow(std::max(b, 1.0), b) * std::pow(2.0, b) *
                       2.0 * (double)(total_profit + 1);
        assert((double)tables[t].size() <= bound);
      }
#endif
    }
  }

  void compute(int t) {
    const auto& node = dec.nodes[t];
    Table& table = tables[t];
    switch (node.kind) {
      case NiceDecomposition::Kind::Leaf: {
        StateKey key;
        key.used = 1;  // bag is exactly {s}
        key.parity = 0;
        key.blocks = 0;
        key.profit = inst.vertices[inst.start].profit;
        upsert(table, key, 0, {});
        break;
      }
      case NiceDecomposition::Kind::IntroduceVertex: {
        const auto& child = dec.nodes[node.child];
        int q = position_of(node.bag, node.vertex);
        for (const auto& [ckey, centry] : tables[node.child]) {
          StateKey base = translate(ckey, child.bag, node.bag);
          Prov prov;
          prov.a = ckey;
          prov.has_a = true;
          upsert(table, base, centry.cost, prov);
          StateKey used = base;
          used.used |= 1u << q;
          auto label = unpack_blocks(base.blocks, base.used, (int)node.bag.size());
          int fresh = 0;
          for (int l : label) fresh = std::max(fresh, l + 1);
          label[q] = fresh;
          used.blocks = canon_blocks(label, used.used);
          used.profit = base.profit + inst.vertices[node.vertex].profit;
          upsert(table, used, centry.cost, prov);
        }
        break;
      }
      case NiceDecomposition::Kind::IntroduceEdge: {
        const auto& child = dec.nodes[node.child];
        int pu = position_of(node.bag, node.eu);
        int pv = position_of(node.bag, node.ev);
        for (const auto& [ckey, centry] : tables[node.child]) {
          StateKey base = translate(ckey, child.bag, node.bag);
          Prov skip;
          skip.a = ckey;
          skip.has_a = true;
          upsert(table, base, centry.cost, skip);
          if (!(base.used >> pu & 1) || !(base.used >> pv & 1)) continue;
          auto label = unpack_blocks(base.blocks, base.used, (int)node.bag.size());
          // Once: degree parities flip, blocks merge (or a cycle closes).
          {
            StateKey once = base;
            auto merged = label;
            int from = merged[pu], to = merged[pv];
            if (from != to)
              for (int& l : merged)
                if (l == from) l = to;
            once.blocks = canon_blocks(merged, once.used);
            once.parity ^= (1u << pu) | (1u << pv);
            Prov prov;
            prov.a = ckey;
            prov.has_a = true;
            prov.edge_copies = 1;
            upsert(table, once, centry.cost + node.ecost, prov);
          }
          // Twice: parities unchanged; only useful to bridge two blocks.
          if (label[pu] != label[pv]) {
            StateKey twice = base;
            auto merged = label;
            int from = merged[pu], to = merged[pv];
            for (int& l : merged)
              if (l == from) l = to;
            twice.blocks = canon_blocks(merged, twice.used);
            Prov prov;
            prov.a = ckey;
            prov.has_a = true;
            prov.edge_copies = 2;
            upsert(table, twice, centry.cost + 2 * node.ecost, prov);
          }
        }
        break;
      }
      case NiceDecomposition::Kind::Forget: {
        const auto& child = dec.nodes[node.child];
        int pw = position_of(child.bag, node.vertex);
        for (const auto& [ckey, centry] : tables[node.child]) {
          Prov prov;
          prov.a = ckey;
          prov.has_a = true;
          if (!(ckey.used >> pw & 1)) {
            upsert(table, translate(ckey, child.bag, node.bag), centry.cost, prov);
            continue;
          }
          bool odd = ckey.parity >> pw & 1;
          StateKey shrunk = ckey;
          if (odd) {
            if (ckey.banked) continue;  // two loose ends can never rejoin s
            shrunk.banked = 1;
          }
          // The block must keep another bag vertex or it can never reach s.
          auto label = unpack_blocks(ckey.blocks, ckey.used, (int)child.bag.size());
          int mates = 0;
          for (size_t p = 0; p < child.bag.size(); ++p)
            if ((ckey.used >> p & 1) && (int)p != pw && label[p] == label[pw]) ++mates;
          if (mates == 0) continue;
          shrunk.used &= ~(1u << pw);
          shrunk.parity &= ~(1u << pw);
          shrunk.blocks = canon_blocks(label, shrunk.used);
          upsert(table, translate(shrunk, child.bag, node.bag), centry.cost, prov);
        }
        break;
      }
      case NiceDecomposition::Kind::Join: {
        // Bags coincide; bucket by the used subset.
        std::map<std::uint32_t, std::vector<std::pair<StateKey, Cost>>> left, right;
        for (const auto& [k, e] : tables[node.child]) left[k.used].push_back({k, e.cost});
        for (const auto& [k, e] : tables[node.child2]) right[k.used].push_back({k, e.cost});
        const int b = (int)node.bag.size();
        for (const auto& [used, ls] : left) {
          auto it = right.find(used);
          if (it == right.end()) continue;
          Profit shared = 0;
          for (int p = 0; p < b; ++p)
            if (used >> p & 1) shared += inst.vertices[node.bag[p]].profit;
          for (const auto& [ka, ca] : ls)
            for (const auto& [kb, cb] : it->second) {
              if (ka.banked + kb.banked > 1) continue;
              StateKey merged;
              merged.used = used;
              merged.parity = ka.parity ^ kb.parity;
              merged.banked = (std::uint8_t)(ka.banked + kb.banked);
              merged.profit = ka.profit + kb.profit - shared;
              // Union-find across the two block structures.
              auto la = unpack_blocks(ka.blocks, used, b);
              auto lb = unpack_blocks(kb.blocks, used, b);
              int up[32];
              for (int i = 0; i < 32; ++i) up[i] = i;
              auto find = [&up](int x) {
                while (up[x] != x) x = up[x] = up[up[x]];
                return x;
              };
              for (int p = 0; p < b; ++p) {
                if (!(used >> p & 1)) continue;
                up[find(la[p])] = find(16 + lb[p]);
              }
              std::vector<int> label(b, -1);
              for (int p = 0; p < b; ++p)
                if (used >> p & 1) label[p] = find(la[p]);
              merged.blocks = canon_blocks(label, used);
              Prov prov;
              prov.a = ka;
              prov.b = kb;
              prov.has_a = prov.has_b = true;
              upsert(table, merged, ca + cb, prov);
            }
        }
        break;
      }
    }
  }
};

}  // namespace

Solution solve_tw(const Instance& raw, const NiceDecomposition& dec, const TwCaps& caps) {
  if (!undirected_graph(raw.topology))
    fail_input("solve_tw requires a tree or general instance");
  Instance inst = require_valid(raw);
  if (inst.has_windows()) fail_input("solve_tw handles the plain OP only; windows present");
  if (dec.width > caps.max_width + 1)
    fail_resource("solve_tw: decomposition width " + std::to_string(dec.width) +
                  " exceeds the cap");
  for (const auto& node : dec.nodes)
    if (!std::count(node.bag.begin(), node.bag.end(), inst.start))
      fail_input("solve_tw: decomposition does not keep the start vertex in every bag");

  TwSolver solver(inst, dec, caps);
  solver.run();

  // Root states: single block {s}; either a closed tour (s even, no buried
  // end) or an open walk (s odd, one buried end).
  const Table& root = solver.tables[dec.root];
  Profit best = -1;
  StateKey best_key;
  for (const auto& [key, entry] : root) {
    if (key.used != 1) continue;
    bool closed = (key.parity & 1) == 0 && key.banked == 0;
    bool open = (key.parity & 1) == 1 && key.banked == 1;
    if (!closed && !open) continue;
    if (entry.cost > inst.budget) continue;
    if (key.profit > best) {
      best = key.profit;
      best_key = key;
    }
  }
  Solution sol;
  sol.algorithm = "tw-dp";
  if (best < 0) {
    sol.profit = 0;
    sol.walk.visits = {{inst.start, 0}};
    return sol;
  }
  sol.profit = best;

  // Gather the edge multiset along the provenance chain.
  std::map<std::pair<int, int>, int> edge_copies;
  std::function<void(int, const StateKey&)> trace = [&](int t, const StateKey& key) {
    const auto& node = dec.nodes[t];
    auto it = solver.tables[t].find(key);
    if (it == solver.tables[t].end()) fail_internal("tw trace: missing state");
    const Prov& prov = it->second.prov;
    if (node.kind == NiceDecomposition::Kind::IntroduceEdge && prov.edge_copies > 0) {
      auto e = std::minmax(node.eu, node.ev);
      edge_copies[{e.first, e.second}] += prov.edge_copies;
    }
    if (prov.has_a) trace(node.child, prov.a);
    if (prov.has_b) trace(node.child2, prov.b);
  };
  trace(dec.root, best_key);

  // Hierholzer from the start vertex over the collected multiset.
  std::map<int, std::multiset<int>> multi;
  Cost total_cost = 0;
  std::map<std::pair<int, int>, Cost> cost_of;
  for (const auto& e : inst.edges) {
    auto k = std::minmax(e.u, e.v);
    cost_of[{k.first, k.second}] = e.cost;
  }
  for (const auto& [e, copies] : edge_copies) {
    for (int c = 0; c < copies; ++c) {
      multi[e.first].insert(e.second);
      multi[e.second].insert(e.first);
      total_cost += cost_of[e];
    }
  }
  if (total_cost > inst.budget) fail_internal("tw: witness exceeds the budget");

  std::vector<int> tour;
  std::vector<int> call_stack{inst.start};
  while (!call_stack.empty()) {
    int v = call_stack.back();
    auto& out = multi[v];
    if (out.empty()) {
      tour.push_back(v);
      call_stack.pop_back();
    } else {
      int w = *out.begin();
      out.erase(out.begin());
      auto& back = multi[w];
      back.erase(back.find(v));
      call_stack.push_back(w);
    }
  }
  std::reverse(tour.begin(), tour.end());

  sol.walk.visits.clear();
  Time t = 0;
  sol.walk.visits.push_back({inst.start, 0});
  for (size_t i = 1; i < tour.size(); ++i) {
    auto k = std::minmax(tour[i - 1], tour[i]);
    t += cost_of[{k.first, k.second}];
    sol.walk.visits.push_back({tour[i], t});
  }
  auto rep = validate_walk(inst, sol.walk);
  if (!rep.valid || rep.profit != sol.profit) fail_internal("tw: witness mismatch");
  return sol;
}

Solution approx_tw(const Instance& raw, const NiceDecomposition& dec, double epsilon,
                   const TwCaps& caps) {
  if (!(epsilon > 0)) fail_input("approx_tw: epsilon must be positive");
  Instance inst = require_valid(raw);
  if (inst.has_windows()) fail_input("approx_tw handles the plain OP only; windows present");
  const int n = inst.n;

  if ((double)n < 1.0 + 1.0 / epsilon) {
    Solution sol = oracle_op(inst);
    sol.algorithm = "tw-approx";
    return sol;
  }

  std::set<Profit> candidates;
  for (const auto& v : inst.vertices)
    if (v.profit > 0) candidates.insert(v.profit);

  Solution best;
  best.algorithm = "tw-approx";
  best.profit = inst.vertices[inst.start].profit;
  best.walk.visits = {{inst.start, 0}};

  for (Profit pmax : candidates) {
    if (inst.vertices[inst.start].profit > pmax) continue;
    // Keep the start component of the graph induced on profits <= pmax.
    std::vector<int> keep_id(n, -1);
    std::vector<int> kept;
    {
      std::vector<std::vector<int>> adj(n);
      for (const auto& e : inst.edges) {
        if (inst.vertices[e.u].profit > pmax || inst.vertices[e.v].profit > pmax) continue;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
      std::vector<int> stack{inst.start};
      std::vector<bool> seen(n, false);
      seen[inst.start] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        kept.push_back(v);
        for (int w : adj[v])
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
      std::sort(kept.begin(), kept.end());
      for (size_t i = 0; i < kept.size(); ++i) keep_id[kept[i]] = (int)i;
    }

    Instance sub;
    sub.topology = Topology::General;
    sub.n = (int)kept.size();
    sub.start = keep_id[inst.start];
    sub.budget = inst.budget;
    for (int v : kept) {
      VertexSpec spec;
      spec.profit = (Profit)((long long)n * n * inst.vertices[v].profit / pmax) + 1;
      sub.vertices.push_back(spec);
    }
    for (const auto& e : inst.edges)
      if (keep_id[e.u] >= 0 && keep_id[e.v] >= 0)
        sub.edges.push_back({keep_id[e.u], keep_id[e.v], e.cost, std::nullopt});
    if (inst.decomposition) {
      RawDecomposition rdec;
      for (const auto& bag : inst.decomposition->bags) {
        std::vector<int> nb;
        for (int v : bag)
          if (keep_id[v] >= 0) nb.push_back(keep_id[v]);
        std::sort(nb.begin(), nb.end());
        rdec.bags.push_back(nb);
      }
      rdec.tree = inst.decomposition->tree;
      sub.decomposition = rdec;
    }

    // The caller's nice decomposition applies verbatim whenever no vertex was
    // dropped; otherwise rebuild on the restricted instance.
    bool identity_subgraph = (int)kept.size() == n;
    NiceDecomposition sub_dec =
        identity_subgraph && !dec.nodes.empty() ? dec : build_nice_decomposition(sub);
    Solution scaled = solve_tw(sub, sub_dec, caps);

    Walk mapped;
    for (const auto& vis : scaled.walk.visits) mapped.visits.push_back({kept[vis.vertex], vis.time});
    auto rep = validate_walk(inst, mapped);
    if (!rep.valid) fail_internal("approx_tw: mapped walk invalid");
    if (rep.profit > best.profit) {
      best.profit = rep.profit;
      best.walk = mapped;
    }
  }
  return best;
}

}  // namespace orienteer
