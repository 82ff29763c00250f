#pragma once

#include "orienteer/model.hpp"

namespace orienteer {

// Rooted at the start vertex and padded with zero-profit vertices on
// zero-cost edges so every node keeps at most two children.
Instance binarize_tree(const Instance& inst);

// Exact plain-OP tree solver: minimal walk cost per (vertex, exact profit,
// open/closed parity), profits generalized from the unit case.
Solution solve_tree(const Instance& inst);

}  // namespace orienteer
