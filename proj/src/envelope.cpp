#include "orienteer/envelope.hpp"

#include <algorithm>

namespace orienteer {

std::uint64_t ProfitEnvelope::next_prio() {
  // xorshift64; seeded per envelope, only tree balance depends on it.
  rng_state_ ^= rng_state_ << 13;
  rng_state_ ^= rng_state_ >> 7;
  rng_state_ ^= rng_state_ << 17;
  return rng_state_;
}

int ProfitEnvelope::make_node(Time key, Profit val) {
  pool_.push_back({key, val, 0, next_prio(), -1, -1});
  return (int)pool_.size() - 1;
}

void ProfitEnvelope::push(int x) {
  Node& nd = pool_[x];
  if (nd.lazy == 0) return;
  nd.val += nd.lazy;
  if (nd.left != -1) pool_[nd.left].lazy += nd.lazy;
  if (nd.right != -1) pool_[nd.right].lazy += nd.lazy;
  nd.lazy = 0;
}

int ProfitEnvelope::merge(int a, int b) {
  if (a == -1) return b;
  if (b == -1) return a;
  if (pool_[a].prio > pool_[b].prio) {
    push(a);
    pool_[a].right = merge(pool_[a].right, b);
    return a;
  }
  push(b);
  pool_[b].left = merge(a, pool_[b].left);
  return b;
}

void ProfitEnvelope::split(int root, Time key, int& lo, int& hi) {
  if (root == -1) {
    lo = hi = -1;
    return;
  }
  push(root);
  if (pool_[root].key < key) {
    split(pool_[root].right, key, pool_[root].right, hi);
    lo = root;
  } else {
    split(pool_[root].left, key, lo, pool_[root].left);
    hi = root;
  }
}

int ProfitEnvelope::find_floor(int root, Time t) const {
  int best = -1;
  int x = root;
  while (x != -1) {
    if (pool_[x].key <= t) {
      best = x;
      x = pool_[x].right;
    } else {
      x = pool_[x].left;
    }
  }
  return best;
}

ProfitEnvelope::ProfitEnvelope(Time horizon, Time initial_release, Profit initial_profit)
    : horizon_(horizon), rng_state_(0x9e3779b97f4a7c15ull) {
  if (horizon < 1) fail_input("envelope: horizon must be positive");
  if (initial_release < 0) fail_input("envelope: negative release");
  if (initial_release > horizon) fail_input("envelope: release beyond horizon");
  if (initial_profit < 0) fail_input("envelope: negative profit");
  if (initial_release == 0 && initial_release < horizon) {
    root_ = make_node(0, initial_profit);
  } else {
    root_ = make_node(0, 0);
    if (initial_release < horizon) {
      int leaf = make_node(initial_release, initial_profit);
      root_ = merge(root_, leaf);
    }
  }
}

Profit ProfitEnvelope::query(Time t) const {
  if (t < 0 || t >= horizon_) fail_input("envelope: query out of range");
  Profit acc = 0;
  int x = root_;
  Profit best_val = 0;
  bool found = false;
  while (x != -1) {
    acc += pool_[x].lazy;
    if (pool_[x].key <= t) {
      best_val = pool_[x].val + acc;
      found = true;
      x = pool_[x].right;
    } else {
      // Left subtree keeps its own pending adds; the accumulator followed the
      // node, so descend with the child's lazy added next round.
      x = pool_[x].left;
    }
  }
  if (!found) fail_internal("envelope: no leaf covers the query point");
  return best_val;
}

void ProfitEnvelope::insert_breakpoint(Time key) {
  int fl = find_floor(root_, key);
  if (fl != -1 && pool_[fl].key == key) return;
  Profit val = query(key);
  int lo, hi;
  split(root_, key, lo, hi);
  root_ = merge(lo, merge(make_node(key, val), hi));
}

Time ProfitEnvelope::min_key(int root) const {
  while (pool_[root].left != -1) root = pool_[root].left;
  return pool_[root].key;
}

Profit ProfitEnvelope::min_key_val(int root) {
  Profit acc = 0;
  int x = root;
  while (true) {
    acc += pool_[x].lazy;
    if (pool_[x].left == -1) return pool_[x].val + acc;
    x = pool_[x].left;
  }
}

void ProfitEnvelope::erase_min(int& root) {
  push(root);
  if (pool_[root].left == -1) {
    root = pool_[root].right;
    return;
  }
  erase_min(pool_[root].left);
}

void ProfitEnvelope::add_over(Time lo, Time hi, Profit delta) {
  if (lo >= hi || delta == 0) return;
  int a, m0, m, b;
  split(root_, lo, a, m0);
  split(m0, hi, m, b);
  if (m != -1) pool_[m].lazy += delta;
  root_ = merge(a, merge(m, b));
}

ProfitEnvelope::Applied ProfitEnvelope::apply_window(Time release, Time deadline, Profit profit) {
  if (release < 0 || release > deadline || deadline >= horizon_)
    fail_input("envelope: window out of range");
  if (profit < 0) fail_input("envelope: negative profit");
  if (profit == 0) return {release, release};

  insert_breakpoint(release);
  const Profit flood_val = query(deadline) + profit;

  // Prune leaves after the deadline whose value the flooded profit beats;
  // their intervals fall into the deadline leaf, which the add below raises
  // to exactly the flood value. Strict comparison keeps equal-valued leaves,
  // which is what makes sequential same-vertex windows safe.
  Time b_r = horizon_;
  while (true) {
    int a, b;
    split(root_, deadline + 1, a, b);
    if (b == -1) {
      root_ = a;
      break;
    }
    Time k = min_key(b);
    Profit v = min_key_val(b);
    if (v < flood_val) {
      erase_min(b);
      root_ = merge(a, b);
      continue;
    }
    b_r = k;
    root_ = merge(a, b);
    break;
  }

  add_over(release, b_r, profit);
  return {release, b_r};
}

Time ProfitEnvelope::flood(Time lo, Time hi, Profit v) {
  if (lo >= hi) return lo;
  if (query(lo) >= v) return lo;
  int a, b;
  split(root_, lo, a, b);
  Time prefix_end = horizon_;
  while (b != -1) {
    if (min_key_val(b) >= v) {
      prefix_end = min_key(b);
      break;
    }
    if (min_key(b) >= hi)
      fail_internal("envelope: flood would break monotonicity past its range");
    erase_min(b);
  }
  b = merge(make_node(lo, v), b);
  root_ = merge(a, b);
  return std::min(prefix_end, hi);
}

std::vector<ProfitEnvelope::Applied> ProfitEnvelope::absorb_shifted(
    const ProfitEnvelope& source, Time release, Time deadline, Profit profit) {
  if (release < 0 || release > deadline || deadline >= horizon_)
    fail_input("envelope: window out of range");
  if (profit < 0) fail_input("envelope: negative profit");

  // Segments of source(min(t, deadline)) + profit on [release, horizon),
  // gathered in ascending order, flooded in descending order so the target
  // stays monotone after every step.
  auto src = source.breakpoints();
  std::vector<std::pair<Time, Profit>> segs;  // (segment start, value)
  for (size_t i = 0; i < src.size(); ++i) {
    Time seg_begin = src[i].first;
    Time seg_end = i + 1 < src.size() ? src[i + 1].first : source.horizon();
    if (seg_end <= release || seg_begin > deadline) continue;
    segs.emplace_back(std::max(seg_begin, release), src[i].second + profit);
  }
  // Beyond the deadline the shifted source is pinned at source(deadline).
  if (deadline + 1 < horizon_)
    segs.emplace_back(deadline + 1, source.query(deadline) + profit);

  std::vector<Applied> raised;
  for (size_t i = segs.size(); i-- > 0;) {
    Time lo = segs[i].first;
    Time hi = i + 1 < segs.size() ? segs[i + 1].first : horizon_;
    Time x = flood(lo, hi, segs[i].second);
    if (x > lo) raised.push_back({lo, x});
  }
  std::reverse(raised.begin(), raised.end());
  // Merge adjacent raised ranges for compact logging.
  std::vector<Applied> merged;
  for (const auto& r : raised) {
    if (!merged.empty() && merged.back().end == r.begin)
      merged.back().end = r.end;
    else
      merged.push_back(r);
  }
  return merged;
}

std::vector<std::pair<Time, Profit>> ProfitEnvelope::breakpoints() const {
  std::vector<std::pair<Time, Profit>> out;
  // Iterative in-order traversal carrying accumulated lazies.
  struct Frame { int node; Profit acc; bool expanded; };
  std::vector<Frame> stack;
  if (root_ != -1) stack.push_back({root_, 0, false});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const Node& nd = pool_[f.node];
    Profit acc = f.acc + nd.lazy;
    if (f.expanded) {
      out.emplace_back(nd.key, nd.val + acc);
      continue;
    }
    if (nd.right != -1) stack.push_back({nd.right, acc, false});
    stack.push_back({f.node, f.acc, true});
    if (nd.left != -1) stack.push_back({nd.left, acc, false});
  }
  return out;
}

std::size_t ProfitEnvelope::leaf_count() const {
  std::size_t count = 0;
  std::vector<int> stack;
  if (root_ != -1) stack.push_back(root_);
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++count;
    if (pool_[x].left != -1) stack.push_back(pool_[x].left);
    if (pool_[x].right != -1) stack.push_back(pool_[x].right);
  }
  return count;
}

}  // namespace orienteer
