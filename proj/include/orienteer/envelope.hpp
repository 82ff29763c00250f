#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orienteer/model.hpp"

namespace orienteer {

// Monotone step function time -> max collectible profit over [0, horizon),
// stored as a balanced tree of half-open leaf intervals with lazy profit
// offsets. apply_window realizes
//   new(t) = old(t)                                   for t <  release
//   new(t) = max(old(t), old(min(t, deadline)) + p)   for t >= release
// in O(log m) amortized. Time rebasing (the running edge-cost offset) is the
// caller's duty; the structure is a pure time -> profit function.
class ProfitEnvelope {
 public:
  ProfitEnvelope(Time horizon, Time initial_release, Profit initial_profit);

  Time horizon() const { return horizon_; }
  Profit query(Time t) const;  // t in [0, horizon)

  // Half-open interval of times whose value an operation strictly raised;
  // empty (begin == end) when the operation was a no-op.
  struct Applied {
    Time begin = 0;
    Time end = 0;
    bool empty() const { return begin >= end; }
  };

  Applied apply_window(Time release, Time deadline, Profit profit);

  // target(t) = max(target(t), source(min(t, deadline)) + profit) for
  // t >= release, where `source` is another envelope (read-only). Returns the
  // strictly raised subranges. Drives the subset-indexed FPT solver.
  std::vector<Applied> absorb_shifted(const ProfitEnvelope& source, Time release,
                                      Time deadline, Profit profit);

  // Ascending (start, value) breakpoints; leaf i covers
  // [start_i, start_{i+1}) and the last leaf runs to the horizon.
  std::vector<std::pair<Time, Profit>> breakpoints() const;

  std::size_t leaf_count() const;

 private:
  struct Node {
    Time key;
    Profit val;
    Profit lazy = 0;
    std::uint64_t prio;
    int left = -1, right = -1;
  };

  int make_node(Time key, Profit val);
  void push(int x);
  int merge(int a, int b);
  void split(int root, Time key, int& lo, int& hi);  // lo: keys < key
  int find_floor(int root, Time t) const;            // node with max key <= t
  void insert_breakpoint(Time key);
  void erase_min(int& root);                         // remove leftmost node
  Profit min_key_val(int root);                      // value of leftmost node
  Time min_key(int root) const;
  void add_over(Time lo, Time hi, Profit delta);     // += delta on keys in [lo, hi)
  // max with constant v over [lo, hi); returns the strictly raised prefix end.
  Time flood(Time lo, Time hi, Profit v);

  std::vector<Node> pool_;
  int root_ = -1;
  Time horizon_;
  std::uint64_t rng_state_;
  std::uint64_t next_prio();
};

}  // namespace orienteer
