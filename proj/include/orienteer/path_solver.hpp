#pragma once

#include <vector>

#include "orienteer/model.hpp"

namespace orienteer {

// Exact solver for OP-MTW on a directed path: one forward sweep over an
// envelope, O(m log m) in the total number of windows, plus quasi-linear
// witness reconstruction from the per-window decision log.
Solution solve_directed_path_mtw(const Instance& inst);

namespace detail {

// "Latest op covering a point" queries over the half-open ranges the forward
// pass applied. Op ids are the insertion order; query returns the largest id
// strictly below `bound` whose range contains `t`, or -1.
class RangeStabber {
 public:
  void add(Time begin, Time end, int id);  // ids must arrive in ascending order
  void build();
  int latest_before(Time t, int bound) const;

 private:
  struct Entry { Time begin, end; int id; };
  std::vector<Entry> entries_;
  std::vector<Time> coords_;
  std::vector<std::vector<int>> tree_;  // ids per segment-tree node, ascending
  std::size_t size_ = 1;
  bool built_ = false;
};

}  // namespace detail
}  // namespace orienteer
