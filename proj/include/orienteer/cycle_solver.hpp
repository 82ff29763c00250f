#pragma once

#include <optional>
#include <vector>

#include "orienteer/model.hpp"

namespace orienteer {

// Resource guards for the cycle solvers. Algorithmic behaviour is unchanged
// by them; they only bound time and memory.
struct CycleCaps {
  int max_k_rounds = 3;          // solve_k_rounds / workout segment rounds
  int max_long_windows = 12;     // FPT subset lattice width
  long long max_unwrap = 10'000'000;  // vertices the unwrapped path may have
  std::size_t max_candidates = 20'000;  // candidate round-start times
};

// Piecewise map from compressed times back to original times. Anchored at
// the event sequence; times inside a shrunk gap map gap-start aligned, the
// leftover original span being waiting time at the gap's end.
struct TimeMap {
  std::vector<std::pair<Time, Time>> anchors;  // (compressed event, original event)
  bool identity = true;
  Time to_original(Time compressed) const;
};

// Event-gap compression: gaps longer than 2C shrink to exactly 2C, bounding
// the latest deadline by 4nC while preserving COP feasibility and the OP
// optimum in both directions.
std::pair<Instance, TimeMap> compress_deadlines(const Instance& inst);

// Last-visit-time schedule for the covering solver, rows = vertices,
// columns = rounds.
struct Schedule {
  int n = 0;
  int rounds = 0;
  std::vector<std::vector<Time>> until;  // until[i][j], 0-based
  std::vector<Time> arrival;             // flattened arrival per slot, filled on demand
};

// Schedule-repair solver for COP-1TW on a directed cycle. Walk witness in
// the original time domain; the minimal schedule (compressed domain) and the
// compressed instance are exposed for verification.
struct CopCycleResult {
  std::optional<Walk> walk;
  Schedule schedule;       // pointwise-minimal schedule, compressed domain
  Instance compressed;
  TimeMap map;
};
CopCycleResult solve_cop_1tw_cycle_full(const Instance& inst);
std::optional<Walk> solve_cop_1tw_cycle(const Instance& inst);

// Cycle unwrapped into `rounds` concatenated copies as a directed path.
Instance unwrap_cycle(const Instance& inst, long long rounds, const CycleCaps& caps = {});

// Exact solver when every window is shorter than the cycle length.
Solution solve_op_1tw_cycle_short(const Instance& inst, const CycleCaps& caps = {});

// Exact FPT solver; parameter = number of profit-bearing windows at least as
// long as the cycle.
Solution solve_op_1tw_cycle_fpt(const Instance& inst, const CycleCaps& caps = {});

// Better of the exact short-window optimum and the simulated long-window
// cruise; profit within [OPT/2, OPT].
Solution approx2_op_1tw_cycle(const Instance& inst, const CycleCaps& caps = {});

// Exact optimum over walks of at most k rounds.
Solution solve_k_rounds(const Instance& inst, int k, const CycleCaps& caps = {});

// Round decomposition of a cycle walk for workout-shape checks.
struct SprintPlan {
  struct Round {
    Time start = 0;
    Time end = 0;
    bool is_sprint = false;
    std::vector<int> collected;
  };
  std::vector<Round> rounds;
  // True when every window of k consecutive rounds contains a sprint and
  // every sprint lasts exactly the cycle length.
  bool satisfies(int k, Cost cycle_len) const;
};

struct WorkoutResult {
  Solution solution;
  SprintPlan plan;
};

// Optimal k-workout (chain of k-sprints; the empty walk when B < C).
WorkoutResult solve_k_workout(const Instance& inst, int k, const CycleCaps& caps = {});

// (1+epsilon)-approximation via 2k-workouts with k-1 = ceil(1/epsilon).
Solution ptas_op_1tw_cycle(const Instance& inst, double epsilon, const CycleCaps& caps = {});

}  // namespace orienteer
