#pragma once

#include <optional>

#include "orienteer/model.hpp"

namespace orienteer {

enum class Direction { Left, Right, Forward };

// Earliest arrival moving monotonically in one direction, waiting at each
// vertex until the edge's whole traversal fits an active interval. nullopt
// when some edge never opens in time.
std::optional<Time> earliest_arrival(const Instance& inst, int from, int to, Time depart,
                                     Direction direction);

// Exact quadratic solver for the plain OP on a dynamic undirected path:
// enumerate the extremal pair (i, j) around the start and both sweep orders.
Solution solve_dyn_undirected_path(const Instance& inst);

// Greedy exact solver for plain OP on dynamic directed paths and cycles:
// advance whenever the next edge admits it.
Solution solve_dyn_directed_chain(const Instance& inst);

}  // namespace orienteer
