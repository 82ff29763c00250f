#pragma once

#include <optional>
#include <vector>

#include "orienteer/model.hpp"

namespace orienteer {

struct OracleCaps {
  int max_profitable = 16;          // bitmask width over profit-bearing vertices
  std::size_t max_states = 4'000'000;
  std::size_t max_event_times = 200'000;
};

// Finite superset of the departure times an optimal canonical walk can use:
// {0}, every window endpoint and activity endpoint shifted by +-(shortest
// path distances), and on cycles additionally by whole laps, clipped to
// [0, B].
std::vector<Time> event_times(const Instance& inst, const OracleCaps& caps = {});

// Exhaustive search over event-time walks. Exact on every topology at desk
// scale; the returned witness passes validate_walk at the claimed profit.
Solution oracle_op(const Instance& inst, const OracleCaps& caps = {});

// Covering variant: a walk collecting every vertex that has a time window
// (every vertex at all when the instance has no windows), or nullopt.
std::optional<Walk> oracle_cop(const Instance& inst, const OracleCaps& caps = {});

// Exact optimum over walks that pass the cycle start vertex at most
// `max_rounds` times; used to cross-check the k-round solver.
Solution oracle_op_rounds(const Instance& inst, int max_rounds, const OracleCaps& caps = {});

}  // namespace orienteer
