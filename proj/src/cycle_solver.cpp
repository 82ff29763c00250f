#include "orienteer/cycle_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "orienteer/envelope.hpp"
#include "orienteer/path_solver.hpp"

namespace orienteer {

namespace {

struct CycleView {
  Instance inst;                // normalized
  Cost length = 0;              // C
  std::vector<Cost> dist0;      // dist(v0, vi)
  std::vector<Cost> edge_into;  // cost of the edge arriving at vertex i (edge_into[0] = wrap)
};

CycleView cycle_view(const Instance& raw, bool require_single_window) {
  if (raw.topology != Topology::DirectedCycle)
    fail_input("solver requires a directed cycle");
  CycleView view;
  view.inst = require_valid(raw);
  const Instance& inst = view.inst;
  if (require_single_window)
    for (int v = 0; v < inst.n; ++v)
      if (inst.vertices[v].windows.size() > 1)
        fail_input("solver requires a single time window per vertex");
  std::vector<Cost> cost_from(inst.n, 0);
  for (const auto& e : inst.edges) cost_from[e.u] = e.cost;
  view.dist0.assign(inst.n, 0);
  for (int i = 1; i < inst.n; ++i) view.dist0[i] = view.dist0[i - 1] + cost_from[i - 1];
  view.length = view.dist0[inst.n - 1] + cost_from[inst.n - 1];
  view.edge_into.assign(inst.n, 0);
  for (int i = 0; i < inst.n; ++i) view.edge_into[(i + 1) % inst.n] = cost_from[i];
  // Round-based scheduling multiplies the cycle length by up to 4n.
  if (view.length > 0 && view.length > kValueLimit / (4 * (Cost)inst.n + 8))
    fail_resource("cycle length too large for round-based scheduling");
  return view;
}

const TimeWindow* window_of(const Instance& inst, int v) {
  return inst.vertices[v].windows.empty() ? nullptr : &inst.vertices[v].windows.front();
}

// Plain OP on a cycle (no windows anywhere): ride one loop while the budget
// lasts; revisits add nothing.
Solution plain_cycle_ride(const CycleView& view, const char* algorithm) {
  const Instance& inst = view.inst;
  Solution sol;
  sol.algorithm = algorithm;
  sol.walk.visits = {{0, 0}};
  sol.profit = inst.vertices[0].profit;
  for (int i = 1; i < inst.n; ++i) {
    if (view.dist0[i] > inst.budget) break;
    sol.walk.visits.push_back({i, view.dist0[i]});
    sol.profit += inst.vertices[i].profit;
  }
  while (sol.walk.visits.size() > 1 && inst.vertices[sol.walk.visits.back().vertex].profit == 0)
    sol.walk.visits.pop_back();
  return sol;
}

// Every vertex is instantly reachable at every time on a zero-length cycle;
// visit collectible vertices in release order over zero-cost hops.
Solution zero_length_cycle_exact(const CycleView& view, const char* algorithm) {
  const Instance& inst = view.inst;
  std::vector<std::pair<Time, int>> targets;  // (release, vertex)
  for (int v = 0; v < inst.n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w != nullptr && inst.vertices[v].profit > 0) targets.push_back({w->release, v});
  }
  std::sort(targets.begin(), targets.end());
  Solution sol;
  sol.algorithm = algorithm;
  sol.profit = 0;
  sol.walk.visits = {{0, 0}};
  int pos = 0;
  Time t = 0;
  for (const auto& [r, v] : targets) {
    while (pos != v) {
      pos = (pos + 1) % inst.n;
      sol.walk.visits.push_back({pos, t});
    }
    if (r > t) {
      sol.walk.visits.push_back({v, r});
      t = r;
    }
    sol.profit += inst.vertices[v].profit;
  }
  return sol;
}

struct Slot {
  int vertex;
  int lap;
};

// Greedy fold of a compressed-domain collection order back onto the original
// cycle: follow the same lap structure, waiting at every collected vertex
// until its original release. Gap compression preserves exactly this order.
Walk replay_on_cycle(const CycleView& orig, const std::vector<Slot>& slots) {
  const Instance& inst = orig.inst;
  Walk walk;
  walk.visits = {{0, 0}};
  Time t = 0;
  int at = 0;
  long long hops_done = 0;
  for (const auto& slot : slots) {
    long long target = (long long)slot.lap * inst.n + slot.vertex;
    if (target < hops_done) fail_internal("replay: slots out of order");
    while (hops_done < target) {
      ++hops_done;
      at = (at + 1) % inst.n;
      t += orig.edge_into[at];
      walk.visits.push_back({at, t});
    }
    const TimeWindow* w = window_of(inst, slot.vertex);
    if (w == nullptr) fail_internal("replay: collected vertex has no window");
    Time u = std::max(t, w->release);
    if (u > w->deadline) fail_internal("replay: deadline missed while folding the walk back");
    if (u > t) {
      walk.visits.push_back({at, u});
      t = u;
    }
  }
  return walk;
}

std::vector<Slot> slots_from_unwrapped_walk(const Instance& unwrapped, int n, const Walk& walk) {
  Instance norm = normalize(unwrapped);
  auto rep = validate_walk(norm, walk);
  if (!rep.valid) fail_internal("unwrapped walk failed validation: " + rep.violation.value_or(""));
  std::vector<Slot> slots;
  std::set<int> seen_vertices;
  for (int copy : rep.collected) {
    int vertex = copy % n;
    if (!seen_vertices.insert(vertex).second)
      fail_internal("unwrapped walk collected the same cycle vertex twice");
    slots.push_back({vertex, copy / n});
  }
  std::sort(slots.begin(), slots.end(), [n](const Slot& a, const Slot& b) {
    return (long long)a.lap * n + a.vertex < (long long)b.lap * n + b.vertex;
  });
  return slots;
}

}  // namespace

Time TimeMap::to_original(Time compressed) const {
  if (identity || anchors.empty()) return compressed;
  auto it = std::upper_bound(anchors.begin(), anchors.end(),
                             std::make_pair(compressed, kValueLimit));
  if (it == anchors.begin()) return compressed;
  --it;
  return it->second + (compressed - it->first);
}

std::pair<Instance, TimeMap> compress_deadlines(const Instance& raw) {
  if (raw.topology != Topology::DirectedCycle)
    fail_input("compress_deadlines requires a directed cycle");
  if (raw.n < 2) fail_input("cycle requires n >= 2");
  CycleView view = cycle_view(raw, true);
  Instance inst = view.inst;
  const Cost two_c = 2 * view.length;

  std::set<Time> event_set;
  for (const auto& v : inst.vertices)
    for (const auto& w : v.windows) {
      event_set.insert(w.release);
      event_set.insert(w.deadline);
    }
  TimeMap map;
  map.anchors = {{0, 0}};
  if (event_set.empty()) {
    map.identity = true;
    return {inst, map};
  }

  std::map<Time, Time> compressed_of;
  Time prev = 0, prev_c = 0;
  bool identity = true;
  for (Time t : event_set) {
    Time gap = t - prev;
    Time c = prev_c + std::min<Time>(gap, two_c);
    if (c != t) identity = false;
    compressed_of[t] = c;
    map.anchors.emplace_back(c, t);
    prev = t;
    prev_c = c;
  }
  map.identity = identity;

  Instance out = inst;
  for (auto& v : out.vertices)
    for (auto& w : v.windows) {
      w.release = compressed_of.at(w.release);
      w.deadline = compressed_of.at(w.deadline);
    }
  out.budget = prev_c;  // latest compressed deadline
  out = normalize(out);
  return {out, map};
}

Instance unwrap_cycle(const Instance& raw, long long rounds, const CycleCaps& caps) {
  CycleView view = cycle_view(raw, false);
  const Instance& inst = view.inst;
  if (rounds < 1) fail_input("unwrap_cycle: rounds must be at least 1");
  if (rounds * inst.n > caps.max_unwrap)
    fail_resource("unwrap_cycle: " + std::to_string(rounds * inst.n) +
                  " vertices exceed the unwrap cap");
  Instance out;
  out.topology = Topology::DirectedPath;
  out.n = (int)(rounds * inst.n);
  out.start = 0;
  out.budget = inst.budget;
  out.timewindowed = inst.timewindowed;
  out.vertices.reserve(out.n);
  for (long long j = 0; j < rounds; ++j)
    for (int i = 0; i < inst.n; ++i) out.vertices.push_back(inst.vertices[i]);
  std::vector<Cost> cost_from(inst.n, 0);
  for (const auto& e : inst.edges) cost_from[e.u] = e.cost;
  for (int c = 0; c + 1 < out.n; ++c)
    out.edges.push_back({c, c + 1, cost_from[c % inst.n], std::nullopt});
  return out;
}

// ---------------------------------------------------------------------------
// COP-1TW schedule repair

CopCycleResult solve_cop_1tw_cycle_full(const Instance& raw) {
  CycleView orig = cycle_view(raw, true);
  CopCycleResult result;
  auto [comp, map] = compress_deadlines(orig.inst);
  result.compressed = comp;
  result.map = map;

  // A vertex whose window was clipped past the budget can never be collected.
  for (int v = 0; v < orig.inst.n; ++v)
    if (!raw.vertices[v].windows.empty() && orig.inst.vertices[v].windows.empty())
      return result;

  if (!orig.inst.has_windows()) {
    // Plain OP: covering means visiting every vertex once around the cycle.
    if (orig.dist0[orig.inst.n - 1] > orig.inst.budget) return result;
    Walk walk;
    walk.visits = {{0, 0}};
    for (int v = 1; v < orig.inst.n; ++v) walk.visits.push_back({v, orig.dist0[v]});
    result.walk = walk;
    result.schedule.n = orig.inst.n;
    result.schedule.rounds = 0;
    return result;
  }

  CycleView view = cycle_view(comp, true);
  const Instance& inst = view.inst;
  const int n = inst.n;
  const int rounds = 4 * n;
  const long long slots = (long long)n * rounds;

  std::vector<Time> until(slots);
  std::vector<Cost> step(slots, 0);
  for (long long s = 0; s < slots; ++s) {
    int i = (int)(s % n);
    until[s] = view.dist0[i] + view.length * (Time)(s / n);
    step[s] = view.edge_into[i];
  }
  step[0] = 0;

  auto arrival = [&](long long s) -> Time { return s == 0 ? 0 : until[s - 1] + step[s]; };
  auto hit_slot = [&](int v) -> long long {
    const TimeWindow* w = window_of(inst, v);
    if (w == nullptr) return 0;
    for (long long s = v; s < slots; s += n)
      if (arrival(s) <= w->deadline && until[s] >= w->release) return s;
    return -1;
  };

  long long repairs = 0;
  const long long repair_cap = 4LL * n * n + n + 8;
  while (true) {
    int pending = -1;
    for (int v = 0; v < n && pending < 0; ++v) {
      if (window_of(inst, v) == nullptr) continue;
      if (hit_slot(v) < 0) pending = v;
    }
    if (pending < 0) break;

    const TimeWindow& w = *window_of(inst, pending);
    if (until[pending] > w.deadline) return result;  // first visit already too late

    long long chosen = -1;
    for (long long s = pending; s < slots; s += n)
      if (until[s] < w.release) chosen = s;
    if (chosen < 0) fail_internal("cop repair: no raisable slot for an uncovered vertex");

    until[chosen] = w.release;
    for (long long s = chosen + 1; s < slots; ++s) {
      Time need = until[s - 1] + step[s];
      if (until[s] >= need) break;
      until[s] = need;
    }
    if (++repairs > repair_cap) fail_internal("cop repair: iteration bound exceeded");
  }

  std::vector<Slot> chosen_slots;
  std::vector<Time> compressed_collect;
  for (int v = 0; v < n; ++v) {
    if (window_of(inst, v) == nullptr) continue;
    long long s = hit_slot(v);
    chosen_slots.push_back({v, (int)(s / n)});
  }
  std::sort(chosen_slots.begin(), chosen_slots.end(), [n](const Slot& a, const Slot& b) {
    return (long long)a.lap * n + a.vertex < (long long)b.lap * n + b.vertex;
  });

  result.schedule.n = n;
  result.schedule.rounds = rounds;
  result.schedule.until.assign(n, std::vector<Time>(rounds));
  result.schedule.arrival.assign(slots, 0);
  for (long long s = 0; s < slots; ++s) {
    result.schedule.until[s % n][s / n] = until[s];
    result.schedule.arrival[s] = arrival(s);
  }
  result.walk = replay_on_cycle(orig, chosen_slots);
  return result;
}

std::optional<Walk> solve_cop_1tw_cycle(const Instance& inst) {
  return solve_cop_1tw_cycle_full(inst).walk;
}

// ---------------------------------------------------------------------------
// Short-window exact solver

Solution solve_op_1tw_cycle_short(const Instance& raw, const CycleCaps& caps) {
  CycleView view = cycle_view(raw, true);
  const Instance& inst = view.inst;
  if (!inst.has_windows()) return plain_cycle_ride(view, "cycle-short");
  for (int v = 0; v < inst.n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w != nullptr && w->deadline - w->release >= view.length)
      fail_input("window length >= cycle length; use the fpt or approx solver");
  }

  auto [comp, map] = compress_deadlines(inst);
  Instance unwrapped = unwrap_cycle(comp, 4LL * inst.n, caps);
  Solution path_sol = solve_directed_path_mtw(unwrapped);

  Solution sol;
  sol.algorithm = "cycle-short";
  sol.profit = path_sol.profit;
  auto slots = slots_from_unwrapped_walk(unwrapped, inst.n, path_sol.walk);
  sol.walk = replay_on_cycle(view, slots);
  auto rep = validate_walk(inst, sol.walk);
  if (!rep.valid || rep.profit != sol.profit)
    fail_internal("cycle-short: folded walk does not match the computed profit");
  return sol;
}

// ---------------------------------------------------------------------------
// FPT in the number of long profit-bearing windows

Solution solve_op_1tw_cycle_fpt(const Instance& raw, const CycleCaps& caps) {
  CycleView view = cycle_view(raw, true);
  if (!view.inst.has_windows()) return plain_cycle_ride(view, "cycle-fpt");
  if (view.length == 0) return zero_length_cycle_exact(view, "cycle-fpt");

  auto [comp, map] = compress_deadlines(view.inst);
  CycleView cview = cycle_view(comp, true);
  const Instance& inst = cview.inst;
  const int n = inst.n;
  const Time budget = inst.budget;

  std::vector<int> long_bit(n, -1);
  int k = 0;
  for (int v = 0; v < n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w != nullptr && inst.vertices[v].profit > 0 && w->deadline - w->release >= cview.length)
      long_bit[v] = k++;
  }
  if (k > caps.max_long_windows)
    fail_resource("cycle-fpt: k = " + std::to_string(k) + " long windows exceed the cap of " +
                  std::to_string(caps.max_long_windows));

  const long long rounds = 4LL * n;
  if (rounds * n > caps.max_unwrap) fail_resource("cycle-fpt: unwrap cap exceeded");
  const Time horizon = budget + 1;
  const std::size_t subsets = (std::size_t)1 << k;
  std::vector<ProfitEnvelope> env;
  env.reserve(subsets);
  for (std::size_t s = 0; s < subsets; ++s) env.emplace_back(horizon, 0, 0);

  struct FptOp {
    int env;
    int src;
    int vertex;
    int lap;
    Time cap;
  };
  std::vector<FptOp> ops;
  std::vector<detail::RangeStabber> stabbers(subsets);

  Profit best = 0;
  std::size_t best_env = 0;
  Time best_point = budget;
  int best_watermark = 0;

  for (long long copy = 0; copy < rounds * n; ++copy) {
    int vertex = (int)(copy % n);
    int lap = (int)(copy / n);
    Time pos = cview.dist0[vertex] + (Time)lap * cview.length;
    if (pos > budget) break;
    const TimeWindow* w = window_of(inst, vertex);
    Profit pi = inst.vertices[vertex].profit;
    if (w != nullptr && pi > 0 && w->deadline - pos >= 0) {
      Time d = w->deadline - pos;
      Time r = std::max<Time>(w->release - pos, 0);
      if (long_bit[vertex] >= 0) {
        const std::size_t bit = (std::size_t)1 << long_bit[vertex];
        for (std::size_t s = 0; s < subsets; ++s) {
          if (s & bit) continue;
          auto ranges = env[s | bit].absorb_shifted(env[s], r, d, pi);
          if (ranges.empty()) continue;
          for (const auto& range : ranges)
            stabbers[s | bit].add(range.begin, range.end, (int)ops.size());
          ops.push_back({(int)(s | bit), (int)s, vertex, lap, d});
        }
      } else {
        for (std::size_t s = 0; s < subsets; ++s) {
          auto applied = env[s].apply_window(r, d, pi);
          if (applied.empty()) continue;
          stabbers[s].add(applied.begin, applied.end, (int)ops.size());
          ops.push_back({(int)s, (int)s, vertex, lap, d});
        }
      }
    }
    for (std::size_t s = 0; s < subsets; ++s) {
      Profit q = env[s].query(budget - pos);
      if (q > best) {
        best = q;
        best_env = s;
        best_point = budget - pos;
        best_watermark = (int)ops.size();
      }
    }
  }

  for (auto& st : stabbers) st.build();

  std::vector<Slot> slots;
  std::size_t cur_env = best_env;
  Time t = best_point;
  int bound = best_watermark;
  while (true) {
    int id = stabbers[cur_env].latest_before(t, bound);
    if (id < 0) break;
    const FptOp& op = ops[id];
    Time u = std::min(t, op.cap);
    slots.push_back({op.vertex, op.lap});
    cur_env = (std::size_t)op.src;
    t = u;
    bound = id;
  }
  std::reverse(slots.begin(), slots.end());
  std::sort(slots.begin(), slots.end(), [n](const Slot& a, const Slot& b) {
    return (long long)a.lap * n + a.vertex < (long long)b.lap * n + b.vertex;
  });

  Solution sol;
  sol.algorithm = "cycle-fpt";
  sol.profit = best;
  sol.walk = replay_on_cycle(view, slots);
  auto rep = validate_walk(view.inst, sol.walk);
  if (!rep.valid || rep.profit != sol.profit)
    fail_internal("cycle-fpt: reconstructed walk does not match the computed profit");
  return sol;
}

// ---------------------------------------------------------------------------
// 2-approximation

Solution approx2_op_1tw_cycle(const Instance& raw, const CycleCaps& caps) {
  CycleView view = cycle_view(raw, true);
  const Instance& inst = view.inst;
  if (!inst.has_windows()) return plain_cycle_ride(view, "cycle-2approx");
  if (view.length == 0) return zero_length_cycle_exact(view, "cycle-2approx");

  // Short branch: silence every long window, then solve exactly.
  Instance shorts = inst;
  for (int v = 0; v < inst.n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w != nullptr && w->deadline - w->release >= view.length) {
      shorts.vertices[v].windows = {{0, 0}};
      shorts.vertices[v].profit = 0;
    }
  }
  Solution short_sol = solve_op_1tw_cycle_short(shorts, caps);
  short_sol.profit = validate_walk(inst, short_sol.walk).profit;

  // Long branch: a non-stop cruise collects every long window it can reach
  // within the budget; simulate rather than assume all of them.
  Profit long_profit = 0;
  Time last_collect = 0;
  for (int v = 0; v < inst.n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w == nullptr || w->deadline - w->release < view.length) continue;
    if (inst.vertices[v].profit == 0) continue;
    for (Time t = view.dist0[v]; t <= inst.budget; t += view.length) {
      if (t >= w->release && t <= w->deadline) {
        long_profit += inst.vertices[v].profit;
        last_collect = std::max(last_collect, t);
        break;
      }
    }
  }

  if (long_profit <= short_sol.profit) {
    short_sol.algorithm = "cycle-2approx";
    return short_sol;
  }
  Solution sol;
  sol.algorithm = "cycle-2approx";
  sol.walk.visits = {{0, 0}};
  Time t = 0;
  int at = 0;
  while (t < last_collect) {
    at = (at + 1) % inst.n;
    t += view.edge_into[at];
    sol.walk.visits.push_back({at, t});
  }
  auto rep = validate_walk(inst, sol.walk);
  if (!rep.valid || rep.profit < long_profit)
    fail_internal("cycle-2approx: cruise walk mismatch");
  sol.profit = rep.profit;  // the cruise may also pass short windows
  return sol;
}

// ---------------------------------------------------------------------------
// k-round dynamic program (shared by the workout segments)

namespace {

constexpr Time kEnded = -1;

struct RoundsQuery {
  std::vector<Time> starts;    // departure times from v0, ascending
  bool last_is_sprint = false;
  Time time_cap = 0;           // no visit beyond this time
  Time final_presence = 0;     // the walk may idle at its end until this time
  Time presence_from = 0;      // the walk reaches v0 at this time (segment start)
  std::vector<char> eligible;  // per-vertex: profit may be counted
};

struct RoundsOutcome {
  Profit profit = -1;  // -1: the round structure is infeasible
  std::vector<std::tuple<int, int, Time>> collections;  // (vertex, round, time)
};

struct EngineState {
  std::vector<Time> leave;  // per round; kEnded once the walk stopped
  bool v0_done = false;
  Profit profit = 0;
  std::vector<std::tuple<int, int, Time>> collections;
};

bool dominates(const EngineState& a, const EngineState& b) {
  if (a.v0_done != b.v0_done) return false;
  if (a.profit < b.profit) return false;
  for (size_t i = 0; i < a.leave.size(); ++i) {
    if ((a.leave[i] == kEnded) != (b.leave[i] == kEnded)) return false;
    if (a.leave[i] != kEnded && a.leave[i] > b.leave[i]) return false;
  }
  return true;
}

void insert_state(std::vector<EngineState>& states, EngineState&& st) {
  for (const auto& other : states)
    if (dominates(other, st)) return;
  states.erase(std::remove_if(states.begin(), states.end(),
                              [&](const EngineState& other) { return dominates(st, other); }),
               states.end());
  states.push_back(std::move(st));
}

// Best walk for a fixed tuple of round departures. Waits happen only at a
// vertex whose own release is being collected; the last round may stop early
// unless it is a forced sprint.
RoundsOutcome run_rounds(const CycleView& view, const RoundsQuery& q) {
  const Instance& inst = view.inst;
  const int n = inst.n;
  const int rounds = (int)q.starts.size();
  RoundsOutcome out;
  if (rounds == 0) return out;
  if (q.starts[0] < q.presence_from) return out;
  for (int i = 0; i + 1 < rounds; ++i)
    if (q.starts[i + 1] < q.starts[i] + view.length) return out;
  if (q.last_is_sprint && q.starts.back() + view.length > q.time_cap) return out;

  std::vector<EngineState> states;
  {
    EngineState init;
    init.leave = q.starts;
    const TimeWindow* w = window_of(inst, 0);
    if (w != nullptr && q.eligible[0] && inst.vertices[0].profit > 0 &&
        w->deadline >= q.presence_from && q.starts[0] >= w->release) {
      init.v0_done = true;
      init.profit = inst.vertices[0].profit;
      // Collected while idling before the first departure; round -1 marks
      // that no movement is needed for it.
      init.collections.emplace_back(0, -1, std::max<Time>(w->release, q.presence_from));
    }
    states.push_back(std::move(init));
  }

  for (int j = 1; j < n; ++j) {
    const TimeWindow* w = window_of(inst, j);
    const Profit pi = q.eligible[j] ? inst.vertices[j].profit : 0;
    std::vector<EngineState> next;
    for (const auto& st : states) {
      struct Partial {
        std::vector<Time> leave;
        int hit_round = -1;
        Time hit_time = 0;
      };
      std::vector<Partial> partials(1);
      for (int i = 0; i < rounds && !partials.empty(); ++i) {
        std::vector<Partial> grown;
        const bool is_sprint = q.last_is_sprint && i == rounds - 1;
        const bool is_last = i == rounds - 1;
        for (const auto& part : partials) {
          if (st.leave[i] == kEnded) {
            Partial p = part;
            p.leave.push_back(kEnded);
            grown.push_back(std::move(p));
            continue;
          }
          Time arr = st.leave[i] + view.edge_into[j];
          if (is_last && !is_sprint) {
            // End the walk at the previous vertex instead of moving here.
            Partial p = part;
            p.leave.push_back(kEnded);
            grown.push_back(std::move(p));
          }
          if (arr > q.time_cap) continue;
          {
            // Move on immediately.
            Partial p = part;
            if (p.hit_round < 0 && w != nullptr && pi > 0 && arr <= w->deadline &&
                arr >= w->release) {
              p.hit_round = i;
              p.hit_time = arr;
            }
            p.leave.push_back(arr);
            grown.push_back(std::move(p));
          }
          if (!is_sprint && w != nullptr && pi > 0 && w->release > arr &&
              w->release <= q.time_cap && arr <= w->deadline) {
            // Wait here for this vertex's own release.
            Partial p = part;
            if (p.hit_round < 0) {
              p.hit_round = i;
              p.hit_time = w->release;
            }
            p.leave.push_back(w->release);
            grown.push_back(std::move(p));
          }
          if (is_last && !is_sprint) {
            // End the walk right here; presence extends to final_presence.
            Partial p = part;
            if (p.hit_round < 0 && w != nullptr && pi > 0 && arr <= w->deadline &&
                q.final_presence >= w->release) {
              p.hit_round = i;
              p.hit_time = std::max(arr, w->release);
            }
            p.leave.push_back(kEnded);
            grown.push_back(std::move(p));
          }
        }
        partials = std::move(grown);
      }
      for (auto& part : partials) {
        EngineState ns;
        ns.leave = std::move(part.leave);
        ns.v0_done = st.v0_done;
        ns.profit = st.profit;
        ns.collections = st.collections;
        if (part.hit_round >= 0) {
          ns.profit += pi;
          ns.collections.emplace_back(j, part.hit_round, part.hit_time);
        }
        insert_state(next, std::move(ns));
      }
    }
    states = std::move(next);
    if (states.empty()) return out;
  }

  // Close the rounds: wrap back to v0, check the next departure fits, and
  // resolve the start vertex's presence between rounds and at the end.
  const TimeWindow* w0 = window_of(inst, 0);
  const Profit pi0 = q.eligible[0] ? inst.vertices[0].profit : 0;
  for (auto st : states) {
    bool feasible = true;
    for (int i = 0; i < rounds && feasible; ++i) {
      if (st.leave[i] == kEnded) {
        if (i + 1 < rounds) feasible = false;  // only the last round may stop early
        continue;
      }
      Time back = st.leave[i] + view.edge_into[0];
      Time stay_until;
      if (i + 1 < rounds) {
        if (back > q.starts[i + 1]) {
          feasible = false;
          break;
        }
        stay_until = q.starts[i + 1];
      } else {
        if (back > q.time_cap) {
          if (q.last_is_sprint) feasible = false;
          break;  // a non-sprint last round may simply end before the wrap
        }
        stay_until = q.final_presence;
      }
      if (!st.v0_done && w0 != nullptr && pi0 > 0 && back <= w0->deadline &&
          stay_until >= w0->release) {
        st.v0_done = true;
        st.profit += pi0;
        st.collections.emplace_back(0, i, std::max(back, w0->release));
      }
    }
    if (!feasible) continue;
    if (st.profit > out.profit) {
      out.profit = st.profit;
      out.collections = st.collections;
    }
  }
  return out;
}

// Walk realization of an engine outcome. A collection at round i of vertex 0
// recorded at the round's wrap is emitted as a wait on arrival back at v0.
Walk rounds_walk(const CycleView& view, const std::vector<Time>& starts,
                 const std::vector<std::tuple<int, int, Time>>& collections,
                 bool full_rounds, Time begin_time = 0) {
  const Instance& inst = view.inst;
  const int n = inst.n;
  std::map<std::pair<int, int>, Time> need;  // (round, vertex) -> collect time
  long long last_pos = 0;
  Time idle_collect = 0;  // pre-departure stay at the start vertex
  for (const auto& [v, round, time] : collections) {
    if (round < 0) {
      idle_collect = std::max(idle_collect, time);
      continue;
    }
    auto key = std::make_pair(round, v);
    auto it = need.find(key);
    if (it == need.end() || it->second < time) need[key] = time;
    long long pos = (long long)round * n + (v == 0 ? n : v);  // v0 collects at the wrap
    last_pos = std::max(last_pos, pos);
  }
  if (full_rounds) last_pos = std::max(last_pos, (long long)(starts.size()) * n);
  Walk walk;
  walk.visits = {{0, begin_time}};
  Time t = begin_time;
  if (last_pos == 0) {
    // Nothing forces any movement; idle for the start collection if one exists.
    if (idle_collect > t) walk.visits.push_back({0, idle_collect});
    return walk;
  }
  for (int i = 0; i < (int)starts.size(); ++i) {
    if ((long long)i * n >= last_pos && !full_rounds) break;
    if (starts[i] > t) {
      walk.visits.push_back({0, starts[i]});
      t = starts[i];
    }
    for (int step = 1; step <= n; ++step) {
      long long pos = (long long)i * n + step;
      if (!full_rounds && pos > last_pos) break;
      int v = step % n;
      t += view.edge_into[v];
      walk.visits.push_back({v, t});
      auto it = need.find({i, v});
      if (it != need.end() && it->second > t) {
        walk.visits.push_back({v, it->second});
        t = it->second;
      }
    }
  }
  return walk;
}

std::vector<Time> candidate_times(const CycleView& view, const CycleCaps& caps) {
  const Instance& inst = view.inst;
  std::set<Time> cand{0};
  cand.insert(inst.budget);
  const long long lap_limit = 4LL * inst.n;
  for (int v = 0; v < inst.n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w == nullptr) continue;
    for (long long qn = 0; qn < lap_limit; ++qn) {
      Time t = w->release - view.dist0[v] - (Time)qn * view.length;
      if (t < 0) break;
      if (t <= inst.budget) cand.insert(t);
      if (view.length == 0) break;
    }
  }
  if (view.length > 0) {
    std::vector<Time> frontier(cand.begin(), cand.end());
    while (!frontier.empty()) {
      std::vector<Time> grown;
      for (Time t : frontier) {
        Time shifted = t + view.length;
        if (shifted <= inst.budget && cand.insert(shifted).second) grown.push_back(shifted);
        if (cand.size() > caps.max_candidates)
          fail_resource("cycle solver: candidate time cap exceeded");
      }
      frontier = std::move(grown);
    }
  }
  return {cand.begin(), cand.end()};
}

void enumerate_tuples(const std::vector<Time>& cand, int count, Time lo, Time hi, Cost spacing,
                      std::vector<Time>& cur,
                      const std::function<void(const std::vector<Time>&)>& emit) {
  if ((int)cur.size() == count) {
    emit(cur);
    return;
  }
  Time min_t = cur.empty() ? lo : cur.back() + spacing;
  for (Time t : cand) {
    if (t < min_t || t > hi) continue;
    cur.push_back(t);
    enumerate_tuples(cand, count, lo, hi, spacing, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

Solution solve_k_rounds(const Instance& raw, int k, const CycleCaps& caps) {
  CycleView view = cycle_view(raw, true);
  const Instance& inst = view.inst;
  if (k < 1 || k > caps.max_k_rounds)
    fail_input("solve_k_rounds: k must lie in [1, " + std::to_string(caps.max_k_rounds) + "]");
  if (!inst.has_windows()) return plain_cycle_ride(view, "cycle-kround");
  if (view.length == 0) return zero_length_cycle_exact(view, "cycle-kround");

  std::vector<char> eligible(inst.n, 1);
  auto cand = candidate_times(view, caps);

  Solution best;
  best.algorithm = "cycle-kround";
  best.profit = 0;
  best.walk.visits = {{0, 0}};
  {
    // Staying home: presence [0, B] at the start vertex.
    const TimeWindow* w0 = window_of(inst, 0);
    if (w0 != nullptr && inst.vertices[0].profit > 0 && w0->release <= inst.budget) {
      best.profit = inst.vertices[0].profit;
      if (w0->release > 0) best.walk.visits.push_back({0, w0->release});
    }
  }

  std::vector<Time> best_starts;
  RoundsOutcome best_outcome;
  for (int q = 1; q <= k; ++q) {
    std::vector<Time> cur;
    enumerate_tuples(cand, q, 0, inst.budget, view.length, cur,
                     [&](const std::vector<Time>& starts) {
                       RoundsQuery query;
                       query.starts = starts;
                       query.last_is_sprint = false;
                       query.time_cap = inst.budget;
                       query.final_presence = inst.budget;
                       query.eligible = eligible;
                       auto outcome = run_rounds(view, query);
                       if (outcome.profit > best.profit) {
                         best.profit = outcome.profit;
                         best_starts = starts;
                         best_outcome = outcome;
                       }
                     });
  }
  if (!best_starts.empty()) best.walk = rounds_walk(view, best_starts, best_outcome.collections, false);

  auto rep = validate_walk(inst, best.walk);
  if (!rep.valid || rep.profit != best.profit)
    fail_internal("cycle-kround: witness mismatch");
  return best;
}

// ---------------------------------------------------------------------------
// k-workouts and the PTAS

bool SprintPlan::satisfies(int k, Cost cycle_len) const {
  for (const auto& r : rounds)
    if (r.is_sprint && r.end - r.start != cycle_len) return false;
  if ((int)rounds.size() < k) return true;
  for (size_t i = 0; i + k <= rounds.size(); ++i) {
    bool found = false;
    for (size_t j = i; j < i + (size_t)k; ++j)
      if (rounds[j].is_sprint) found = true;
    if (!found) return false;
  }
  return true;
}

namespace {

SprintPlan plan_from_walk(const CycleView& view, const Walk& walk) {
  SprintPlan plan;
  const Instance& inst = view.inst;
  for (size_t i = 0; i + 1 < walk.visits.size(); ++i) {
    if (walk.visits[i].vertex != 0 || walk.visits[i + 1].vertex == 0) continue;
    SprintPlan::Round round;
    round.start = walk.visits[i].time;
    round.end = walk.visits.back().time;
    for (size_t j = i + 1; j < walk.visits.size(); ++j)
      if (walk.visits[j].vertex == 0) {
        round.end = walk.visits[j].time;
        break;
      }
    round.is_sprint = (round.end - round.start == view.length);
    for (const auto& vis : walk.visits)
      if (vis.time >= round.start && vis.time <= round.end) {
        const TimeWindow* w = window_of(inst, vis.vertex);
        if (w != nullptr && vis.time >= w->release && vis.time <= w->deadline &&
            std::find(round.collected.begin(), round.collected.end(), vis.vertex) ==
                round.collected.end())
          round.collected.push_back(vis.vertex);
      }
    plan.rounds.push_back(std::move(round));
  }
  return plan;
}

// Vertices a no-wait round ending exactly at t would collect; they are barred
// from the segment starting at t so no profit is counted twice.
std::vector<char> sprint_shadow(const CycleView& view, Time t) {
  const Instance& inst = view.inst;
  std::vector<char> shadow(inst.n, 0);
  for (int v = 0; v < inst.n; ++v) {
    const TimeWindow* w = window_of(inst, v);
    if (w == nullptr) continue;
    Time visit = t - view.length + view.dist0[v];
    if (visit >= 0 && visit >= w->release && visit <= w->deadline) shadow[v] = 1;
    // The sprint touches its endpoint vertex twice: at departure and at t.
    if (v == 0 && t >= w->release && t <= w->deadline) shadow[v] = 1;
  }
  return shadow;
}

struct SegmentPlan {
  RoundsOutcome outcome;
  std::vector<Time> starts;
  bool sprint = false;
  Time from = 0;
};

struct WorkoutInternal {
  Profit profit = 0;
  Walk walk;
};

WorkoutInternal workout_search(const CycleView& view, int k, bool with_tails,
                               const CycleCaps& caps) {
  const Instance& inst = view.inst;
  auto nodes = candidate_times(view, caps);
  const int N = (int)nodes.size();
  std::vector<char> all_eligible(inst.n, 1);

  // Best <= max_rounds segment for a walk sitting at v0 from time a; a
  // sprint-ended segment finishes back at v0 exactly at b. The first round
  // may start anywhere at or after a (initial waiting at v0 is allowed).
  auto segment_between = [&](Time a, Time b, bool sprint_end, int max_rounds,
                             const std::vector<char>& eligible) -> SegmentPlan {
    SegmentPlan best_seg;
    best_seg.outcome.profit = -1;
    auto emit = [&](const std::vector<Time>& frees) {
      RoundsQuery query;
      query.starts = frees;
      if (sprint_end) query.starts.push_back(b - view.length);
      query.last_is_sprint = sprint_end;
      query.time_cap = sprint_end ? b : inst.budget;
      query.final_presence = sprint_end ? b : inst.budget;
      query.presence_from = a;
      query.eligible = eligible;
      auto outcome = run_rounds(view, query);
      if (outcome.profit > best_seg.outcome.profit) {
        best_seg.outcome = outcome;
        best_seg.starts = query.starts;
        best_seg.sprint = sprint_end;
        best_seg.from = a;
      }
    };
    for (int q = 1; q <= max_rounds; ++q) {
      int frees = q - (sprint_end ? 1 : 0);
      if (frees == 0) {
        if (b - view.length >= a) emit({});
        continue;
      }
      Time hi = sprint_end ? b - 2 * view.length : inst.budget;
      std::vector<Time> cur;
      enumerate_tuples(nodes, frees, a, hi, view.length, cur, emit);
    }
    return best_seg;
  };

  std::vector<Profit> value(N, -1);
  std::vector<int> pred(N, -1);
  std::vector<SegmentPlan> how(N);

  for (int bi = 0; bi < N; ++bi) {
    Time b = nodes[bi];
    if (b < view.length) continue;
    {
      SegmentPlan seg = segment_between(0, b, true, k, all_eligible);
      if (seg.outcome.profit >= 0 && seg.outcome.profit > value[bi]) {
        value[bi] = seg.outcome.profit;
        pred[bi] = -1;
        how[bi] = std::move(seg);
      }
    }
    for (int ai = 0; ai < N; ++ai) {
      Time a = nodes[ai];
      if (value[ai] < 0 || a + view.length > b) continue;
      auto shadow = sprint_shadow(view, a);
      std::vector<char> eligible(inst.n, 1);
      for (int v = 0; v < inst.n; ++v) {
        const TimeWindow* w = window_of(inst, v);
        bool overlap = w != nullptr && w->release <= b && w->deadline >= a;
        eligible[v] = (char)(overlap && !shadow[v]);
      }
      SegmentPlan seg = segment_between(a, b, true, k, eligible);
      if (seg.outcome.profit >= 0 && value[ai] + seg.outcome.profit > value[bi]) {
        value[bi] = value[ai] + seg.outcome.profit;
        pred[bi] = ai;
        how[bi] = std::move(seg);
      }
    }
  }

  // Idle credit after the final sprint: the start vertex's window may open
  // only later.
  auto rest_credit = [&](Time t) -> Profit {
    const TimeWindow* w0 = window_of(inst, 0);
    if (w0 == nullptr || inst.vertices[0].profit == 0) return 0;
    if (w0->release > t && w0->release <= inst.budget) return inst.vertices[0].profit;
    return 0;
  };

  Profit best_total = 0;
  {
    const TimeWindow* w0 = window_of(inst, 0);
    if (w0 != nullptr && inst.vertices[0].profit > 0 && w0->release <= inst.budget &&
        w0->deadline >= 0)
      best_total = inst.vertices[0].profit;  // waiting-only walk
  }
  int best_node = -1;
  SegmentPlan best_tail;
  best_tail.outcome.profit = -1;
  bool best_has_tail = false;

  for (int i = 0; i < N; ++i) {
    if (value[i] < 0) continue;
    Profit with_rest = value[i] + rest_credit(nodes[i]);
    if (with_rest > best_total) {
      best_total = with_rest;
      best_node = i;
      best_has_tail = false;
    }
    if (with_tails && k >= 2) {
      auto shadow = sprint_shadow(view, nodes[i]);
      std::vector<char> eligible(inst.n, 1);
      for (int v = 0; v < inst.n; ++v) {
        const TimeWindow* w = window_of(inst, v);
        bool overlap = w != nullptr && w->deadline >= nodes[i];
        eligible[v] = (char)(overlap && !shadow[v]);
      }
      SegmentPlan tail = segment_between(nodes[i], inst.budget, false, k - 1, eligible);
      if (tail.outcome.profit > 0 && value[i] + tail.outcome.profit > best_total) {
        best_total = value[i] + tail.outcome.profit;
        best_node = i;
        best_tail = tail;
        best_has_tail = true;
      }
    }
  }
  if (with_tails) {
    SegmentPlan tail = segment_between(0, inst.budget, false, std::max(k - 1, 1), all_eligible);
    if (tail.outcome.profit > best_total) {
      best_total = tail.outcome.profit;
      best_node = -1;
      best_tail = tail;
      best_has_tail = true;
    }
  }

  std::vector<int> chain;
  for (int x = best_node; x != -1; x = pred[x]) chain.push_back(x);
  std::reverse(chain.begin(), chain.end());

  Walk walk;
  walk.visits = {{0, 0}};
  auto append = [&walk](const Walk& piece) {
    for (const auto& vis : piece.visits) {
      if (!walk.visits.empty() && walk.visits.back() == vis) continue;
      walk.visits.push_back(vis);
    }
  };
  for (int node : chain)
    append(rounds_walk(view, how[node].starts, how[node].outcome.collections, true,
                       how[node].from));
  if (best_has_tail && best_tail.outcome.profit >= 0)
    append(rounds_walk(view, best_tail.starts, best_tail.outcome.collections, false,
                       best_tail.from));
  {
    // Trailing idle collection at the start vertex.
    const TimeWindow* w0 = window_of(inst, 0);
    if (w0 != nullptr && inst.vertices[0].profit > 0 && walk.visits.back().vertex == 0 &&
        w0->release > walk.visits.back().time && w0->release <= inst.budget) {
      auto rep = validate_walk(inst, walk);
      if (rep.valid && rep.profit < best_total) walk.visits.push_back({0, w0->release});
    }
  }

  WorkoutInternal result;
  result.walk = walk;
  auto rep = validate_walk(inst, walk);
  if (!rep.valid) fail_internal("workout: stitched walk invalid: " + rep.violation.value_or(""));
  if (rep.profit < best_total)
    fail_internal("workout: stitched walk loses profit (double-count guard failed)");
  result.profit = rep.profit;
  return result;
}

}  // namespace

WorkoutResult solve_k_workout(const Instance& raw, int k, const CycleCaps& caps) {
  CycleView view = cycle_view(raw, true);
  const Instance& inst = view.inst;
  if (k < 1 || k > 2 * caps.max_k_rounds + 2)
    fail_input("solve_k_workout: k out of range");
  if (view.length == 0) fail_input("solve_k_workout: cycle length is zero");

  WorkoutResult result;
  result.solution.algorithm = "cycle-workout";
  if (inst.budget < view.length) {
    // No sprint fits; the only workout is the empty walk.
    result.solution.walk.visits = {{0, 0}};
    const TimeWindow* w0 = window_of(inst, 0);
    result.solution.profit =
        (w0 != nullptr && w0->release <= 0 && w0->deadline >= 0) ? inst.vertices[0].profit : 0;
    return result;
  }

  auto internal = workout_search(view, k, false, caps);
  result.solution.profit = internal.profit;
  result.solution.walk = internal.walk;
  result.plan = plan_from_walk(view, internal.walk);
  return result;
}

Solution ptas_op_1tw_cycle(const Instance& raw, double epsilon, const CycleCaps& caps) {
  if (!(epsilon > 0)) fail_input("ptas: epsilon must be positive");
  CycleView view = cycle_view(raw, true);
  long long k1 = (long long)std::ceil(1.0 / epsilon - 1e-12);
  if (k1 < 1) k1 = 1;
  if (k1 + 1 > caps.max_k_rounds + 1)
    fail_resource("ptas: ceil(1/epsilon) = " + std::to_string(k1) + " exceeds the cap");
  const int k = (int)k1 + 1;

  if (!view.inst.has_windows()) return plain_cycle_ride(view, "cycle-ptas");
  if (view.length == 0) return zero_length_cycle_exact(view, "cycle-ptas");

  auto [comp, map] = compress_deadlines(view.inst);
  CycleView cview = cycle_view(comp, true);
  auto internal = workout_search(cview, 2 * k, true, caps);

  // Fold the compressed walk back onto the original timeline.
  auto rep = validate_walk(comp, internal.walk);
  if (!rep.valid) fail_internal("ptas: compressed walk invalid");
  std::set<int> collected(rep.collected.begin(), rep.collected.end());
  std::vector<Slot> slots;
  int lap = 0;
  std::set<int> done;
  for (size_t i = 0; i < internal.walk.visits.size(); ++i) {
    const auto& vis = internal.walk.visits[i];
    if (i > 0 && vis.vertex == 0 && internal.walk.visits[i - 1].vertex != 0) ++lap;
    if (!collected.count(vis.vertex) || done.count(vis.vertex)) continue;
    Time until = vis.time;
    if (i + 1 < internal.walk.visits.size() && internal.walk.visits[i + 1].vertex == vis.vertex)
      until = internal.walk.visits[i + 1].time;
    const TimeWindow* w = window_of(comp, vis.vertex);
    if (w != nullptr && w->release <= until && vis.time <= w->deadline) {
      slots.push_back({vis.vertex, lap});
      done.insert(vis.vertex);
    }
  }

  Solution sol;
  sol.algorithm = "cycle-ptas";
  sol.profit = internal.profit;
  sol.walk = replay_on_cycle(view, slots);
  auto orep = validate_walk(view.inst, sol.walk);
  if (!orep.valid || orep.profit != sol.profit)
    fail_internal("ptas: folded walk does not match the computed profit");
  return sol;
}

}  // namespace orienteer
