// Acceptance suite: one line per criterion, [PASS] or [FAIL], nonzero exit
// when a gating criterion fails. The two complexity soft checks gate local
// runs but only warn when a CI environment variable is present.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "orienteer/cycle_solver.hpp"
#include "orienteer/dyn_solver.hpp"
#include "orienteer/envelope.hpp"
#include "orienteer/generators.hpp"
#include "orienteer/json_io.hpp"
#include "orienteer/model.hpp"
#include "orienteer/oracle.hpp"
#include "orienteer/path_solver.hpp"
#include "orienteer/tree_solver.hpp"
#include "orienteer/treewidth.hpp"
#include "support.hpp"

using namespace orienteer;
using namespace testsupport;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!ok) ++failures;
}

void warn_or_report(int criterion, const std::string& name, bool ok, const std::string& detail) {
  if (std::getenv("CI") != nullptr && !ok) {
    std::printf("[WARN] %2d %s: %s (non-gating in CI)\n", criterion, name.c_str(),
                detail.c_str());
    return;
  }
  report(criterion, name, ok, detail);
}

Instance random_path_mtw(std::mt19937_64& rng) {
  int n = 1 + (int)(rng() % 6);
  std::vector<VertexSpec> vs;
  for (int i = 0; i < n; ++i) {
    VertexSpec v;
    v.profit = (Profit)(rng() % 6);
    int wins = (int)(rng() % 4);
    for (int w = 0; w < wins; ++w) {
      Time r = (Time)(rng() % 24);
      v.windows.push_back({r, r + (Time)(rng() % 7)});
    }
    vs.push_back(v);
  }
  std::vector<Cost> costs;
  for (int i = 0; i + 1 < n; ++i) costs.push_back((Cost)(rng() % 5));
  return normalize(make_directed_path(costs, vs, 4 + (Time)(rng() % 21)));
}

Instance random_cycle_1tw(std::mt19937_64& rng, int max_n, Time release_span, Time max_len,
                          bool unit_profit = false) {
  int n = 2 + (int)(rng() % (max_n - 1));
  std::vector<VertexSpec> vs;
  for (int i = 0; i < n; ++i) {
    VertexSpec v;
    v.profit = unit_profit ? 1 : (Profit)(rng() % 5);
    if (rng() % 5 != 0) {
      Time r = (Time)(rng() % release_span);
      v.windows.push_back({r, r + (Time)(rng() % (max_len + 1))});
    }
    vs.push_back(v);
  }
  std::vector<Cost> costs;
  for (int i = 0; i < n; ++i) costs.push_back(1 + (Cost)(rng() % 2));
  Time budget = 6 + (Time)(rng() % 15);
  return normalize(make_directed_cycle(costs, vs, budget));
}

// --- criterion 1 --------------------------------------------------------
void path_exactness() {
  std::mt19937_64 rng(101);
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    auto inst = random_path_mtw(rng);
    auto sol = solve_directed_path_mtw(inst);
    auto truth = oracle_op(inst);
    auto rep = validate_walk(inst, sol.walk);
    if (sol.profit != truth.profit || !rep.valid || rep.profit != sol.profit) ++bad;
  }
  report(1, "directed-path exactness on 500 instances", bad == 0,
         bad ? std::to_string(bad) + " mismatches" : "exact");
}

// --- criterion 2 --------------------------------------------------------
void envelope_contract() {
  std::mt19937_64 rng(202);
  int bad = 0;
  for (int run = 0; run < 1000; ++run) {
    Time horizon = 2 + (Time)(rng() % 199);
    Time r0 = (Time)(rng() % horizon);
    Profit p0 = (Profit)(rng() % 5);
    ProfitEnvelope env(horizon, r0, p0);
    NaiveEnvelope ref(horizon, r0, p0);
    int ops = 1 + (int)(rng() % 10);
    for (int i = 0; i < ops; ++i) {
      Time r = (Time)(rng() % horizon);
      Time d = r + (Time)(rng() % (horizon - r));
      Profit p = (Profit)(rng() % 7);
      env.apply_window(r, d, p);
      ref.apply_window(r, d, p);
    }
    for (Time t = 0; t < horizon; ++t)
      if (env.query(t) != ref.query(t)) {
        ++bad;
        break;
      }
  }
  report(2, "envelope matches the array oracle on 1000 sequences", bad == 0,
         bad ? std::to_string(bad) + " diverged" : "pointwise equal");
}

// --- criterion 3 --------------------------------------------------------
void cop_cycle() {
  std::mt19937_64 rng(303);
  int bad = 0, covered = 0, minimality_checked = 0;
  for (int i = 0; i < 500; ++i) {
    auto inst = random_cycle_1tw(rng, 6, 14, 4, true);
    if (cycle_length(inst) > 12) continue;
    auto full = solve_cop_1tw_cycle_full(inst);
    auto truth = oracle_cop(inst);
    if (full.walk.has_value() != truth.has_value()) {
      ++bad;
      continue;
    }
    if (!full.walk) continue;
    ++covered;
    auto rep = validate_walk(inst, *full.walk);
    if (!rep.valid) {
      ++bad;
      continue;
    }
    for (int v = 0; v < inst.n; ++v)
      if (!inst.vertices[v].windows.empty() &&
          !std::count(rep.collected.begin(), rep.collected.end(), v))
        ++bad;
    if (full.schedule.rounds == 0) continue;
    // Pointwise minimality: the schedule lives in the compressed domain, so
    // induce a rival schedule from a covering walk of the compressed
    // instance and extend it without waiting.
    auto rival = oracle_cop(full.compressed);
    if (!rival) {
      ++bad;
      continue;
    }
    ++minimality_checked;
    std::vector<Cost> into(inst.n, 0);
    for (const auto& e : full.compressed.edges) into[(e.u + 1) % inst.n] = e.cost;
    std::vector<std::vector<Time>> induced(inst.n, std::vector<Time>(full.schedule.rounds, -1));
    int lap = 0;
    for (size_t k = 0; k < rival->visits.size(); ++k) {
      const auto& vis = rival->visits[k];
      if (k > 0 && vis.vertex == 0 && rival->visits[k - 1].vertex != 0) ++lap;
      if (lap >= full.schedule.rounds) break;
      induced[vis.vertex][lap] = vis.time;
    }
    Time t = rival->visits.back().time;
    long long slot = (long long)lap * inst.n + rival->visits.back().vertex;
    for (long long s = slot + 1; s < (long long)full.schedule.rounds * inst.n; ++s) {
      int v = (int)(s % inst.n);
      t += into[v];
      if (induced[v][s / inst.n] < 0) induced[v][s / inst.n] = t;
    }
    for (int v = 0; v < inst.n; ++v)
      for (int j = 0; j < full.schedule.rounds; ++j)
        if (induced[v][j] >= 0 && full.schedule.until[v][j] > induced[v][j]) ++bad;
  }
  report(3, "COP cycle feasibility, covering walks, schedule minimality", bad == 0,
         "covered " + std::to_string(covered) + ", minimality on " +
             std::to_string(minimality_checked) + (bad ? ", " + std::to_string(bad) + " bad" : ""));
}

// --- criterion 4 --------------------------------------------------------
void compression_soundness() {
  std::mt19937_64 rng(404);
  int bad_bound = 0, bad_cop = 0, bad_opt = 0, checked = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 2 + (int)(rng() % 4);
    std::vector<VertexSpec> vs;
    for (int v = 0; v < n; ++v) {
      VertexSpec spec;
      spec.profit = 1 + (Profit)(rng() % 4);
      Time r = (Time)(rng() % 30);
      spec.windows.push_back({r, r + (Time)(rng() % 8)});
      vs.push_back(spec);
    }
    std::vector<Cost> costs(n, 1 + (Cost)(rng() % 2));
    auto inst = normalize(make_directed_cycle(costs, vs, 40));
    auto [comp, map] = compress_deadlines(inst);
    Cost c = cycle_length(inst);
    Time dmax = 0;
    for (const auto& v : comp.vertices)
      for (const auto& w : v.windows) dmax = std::max(dmax, w.deadline);
    if (dmax > 4 * (Time)n * c) ++bad_bound;
    ++checked;
    if (oracle_cop(inst).has_value() != oracle_cop(comp).has_value()) ++bad_cop;
    if (oracle_op(inst).profit != oracle_op(comp).profit) ++bad_opt;
  }
  report(4, "compression: d_max <= 4nC, COP feasibility and OP optimum preserved",
         bad_bound == 0 && bad_cop == 0 && bad_opt == 0,
         std::to_string(checked) + " instances" +
             (bad_bound + bad_cop + bad_opt
                  ? ", bound/" + std::to_string(bad_bound) + " cop/" + std::to_string(bad_cop) +
                        " opt/" + std::to_string(bad_opt)
                  : ""));
}

// --- criterion 5 --------------------------------------------------------
void short_and_fpt_exactness() {
  std::mt19937_64 rng(505);
  int bad_short = 0, n_short = 0;
  while (n_short < 300) {
    auto inst = random_cycle_1tw(rng, 5, 14, 2);
    Cost c = cycle_length(inst);
    bool has_long = false;
    for (const auto& v : inst.vertices)
      for (const auto& w : v.windows)
        if (w.deadline - w.release >= c) has_long = true;
    if (has_long) continue;
    ++n_short;
    if (solve_op_1tw_cycle_short(inst).profit != oracle_op(inst).profit) ++bad_short;
  }
  int bad_fpt = 0, n_fpt = 0;
  while (n_fpt < 300) {
    auto inst = random_cycle_1tw(rng, 5, 12, 10);
    Cost c = cycle_length(inst);
    int k = 0;
    for (const auto& v : inst.vertices)
      for (const auto& w : v.windows)
        if (v.profit > 0 && w.deadline - w.release >= c) ++k;
    if (k > 3) continue;
    ++n_fpt;
    if (solve_op_1tw_cycle_fpt(inst).profit != oracle_op(inst).profit) ++bad_fpt;
  }
  report(5, "short-window and FPT cycle exactness (300 each)", bad_short == 0 && bad_fpt == 0,
         bad_short + bad_fpt ? std::to_string(bad_short) + "/" + std::to_string(bad_fpt) + " bad"
                             : "exact");
}

// --- criterion 6 --------------------------------------------------------
void approx2_sandwich() {
  std::mt19937_64 rng(606);
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    auto inst = random_cycle_1tw(rng, 5, 14, 9);
    auto sol = approx2_op_1tw_cycle(inst);
    auto opt = oracle_op(inst).profit;
    if (sol.profit > opt || sol.profit < (opt + 1) / 2) ++bad;
  }
  report(6, "2-approximation sandwich ceil(OPT/2) <= profit <= OPT on 300", bad == 0,
         bad ? std::to_string(bad) + " outside" : "sandwiched");
}

// --- criterion 7 --------------------------------------------------------
void ptas_sandwich() {
  std::mt19937_64 rng(707);
  int bad = 0, bad_plan = 0;
  for (int i = 0; i < 100; ++i) {
    auto inst = random_cycle_1tw(rng, 5, 10, 5);
    auto opt = oracle_op(inst).profit;
    for (double eps : {1.0, 0.5}) {
      auto sol = ptas_op_1tw_cycle(inst, eps);
      // ceil(OPT/(1+eps)) with eps in {1, 1/2}: denominators 2 and 3/2.
      Profit bound = eps == 1.0 ? (opt + 1) / 2 : (2 * opt + 2) / 3;
      if (sol.profit > opt || sol.profit < bound) ++bad;
    }
    for (int k : {2, 4}) {
      auto res = solve_k_workout(inst, k);
      if (!res.plan.satisfies(k, cycle_length(inst))) ++bad_plan;
      if (res.solution.profit > opt) ++bad;
    }
  }
  report(7, "PTAS sandwich (eps 1, 0.5) and sprint-regular workout plans",
         bad == 0 && bad_plan == 0,
         bad + bad_plan ? std::to_string(bad) + " bounds, " + std::to_string(bad_plan) + " plans"
                        : "sandwiched");
}

// --- criterion 8 --------------------------------------------------------
void dyn_path_exactness() {
  std::mt19937_64 rng(808);
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    int n = 2 + (int)(rng() % 6);
    std::vector<VertexSpec> vs;
    for (int v = 0; v < n; ++v) vs.push_back(vx((Profit)(rng() % 5)));
    std::vector<Cost> costs;
    for (int v = 0; v + 1 < n; ++v) costs.push_back(1 + (Cost)(rng() % 3));
    auto inst = make_undirected_path(costs, vs, (int)(rng() % n), 4 + (Time)(rng() % 17));
    for (auto& e : inst.edges) {
      int m = (int)(rng() % 3);
      if (m == 0) continue;
      std::vector<TimeWindow> act;
      Time at = 0;
      for (int q = 0; q < m; ++q) {
        Time a = at + (Time)(rng() % 5);
        Time b = a + (Time)(rng() % 7);
        act.push_back({a, b});
        at = b + 2;
      }
      e.activity = act;
    }
    inst = normalize(inst);
    if (solve_dyn_undirected_path(inst).profit != oracle_op(inst).profit) ++bad;
  }
  report(8, "dynamic undirected path exactness on 300 instances", bad == 0,
         bad ? std::to_string(bad) + " mismatches" : "exact");
}

// --- criterion 9 --------------------------------------------------------
void tree_consistency() {
  std::mt19937_64 rng(909);
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    GenParams p;
    p.topology = Topology::Tree;
    p.n = 1 + (int)(rng() % 8);
    p.windows_per_vertex = 0;
    p.profit_max = 4;
    p.budget_factor = 0.2 + (double)(rng() % 12) / 10.0;
    auto tree = gen_random(p, rng());
    if (solve_tree(tree).profit != oracle_op(tree).profit) ++bad;
  }
  int bad_tw_tree = 0;
  for (int i = 0; i < 200; ++i) {
    GenParams p;
    p.topology = Topology::Tree;
    p.n = 1 + (int)(rng() % 10);
    p.windows_per_vertex = 0;
    p.profit_max = 4;
    p.budget_factor = 0.2 + (double)(rng() % 12) / 10.0;
    auto tree = gen_random(p, rng());
    Instance gen = tree;
    gen.topology = Topology::General;
    auto dec = build_nice_decomposition(gen);
    if (solve_tw(gen, dec).profit != solve_tree(tree).profit) ++bad_tw_tree;
  }
  int bad_tw2 = 0;
  for (int i = 0; i < 100; ++i) {
    GenParams p;
    p.topology = Topology::General;
    p.n = 2 + (int)(rng() % 6);
    p.windows_per_vertex = 0;
    p.profit_max = 4;
    p.budget_factor = 0.2 + (double)(rng() % 12) / 10.0;
    auto inst = gen_random(p, rng());
    auto dec = build_nice_decomposition(inst);
    if (solve_tw(inst, dec).profit != oracle_op(inst).profit) ++bad_tw2;
  }
  report(9, "tree DP vs oracle, treewidth DP vs tree DP and vs oracle",
         bad == 0 && bad_tw_tree == 0 && bad_tw2 == 0,
         bad + bad_tw_tree + bad_tw2 ? std::to_string(bad) + "/" + std::to_string(bad_tw_tree) +
                                           "/" + std::to_string(bad_tw2) + " bad"
                                     : "consistent");
}

// --- criterion 10 -------------------------------------------------------
void approx_tw_guarantee() {
  std::mt19937_64 rng(1010);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    GenParams p;
    p.topology = Topology::Tree;
    p.n = 2 + (int)(rng() % 7);
    p.windows_per_vertex = 0;
    p.profit_max = 100;
    p.budget_factor = 0.2 + (double)(rng() % 12) / 10.0;
    auto tree = gen_random(p, rng());
    Instance gen = tree;
    gen.topology = Topology::General;
    auto dec = build_nice_decomposition(gen);
    auto opt = oracle_op(gen).profit;
    auto sol = approx_tw(gen, dec, 0.5, {});
    long long n = gen.n;
    Profit floor_bound =
        (double)n < 1.0 + 1.0 / 0.5 ? opt : (opt * (n - 1) + n - 1) / n;  // ceil((1-1/n)OPT)
    if (sol.profit > opt || sol.profit < floor_bound) ++bad;
  }
  report(10, "treewidth (1+eps) approximation meets ceil((1-1/n)*OPT) on 100 trees", bad == 0,
         bad ? std::to_string(bad) + " outside" : "guaranteed");
}

// --- criterion 11 -------------------------------------------------------
void reduction_witnesses() {
  bool ok = true;
  std::string detail;
  {
    auto red = from_3partition({4, 5, 5, 5, 5, 6});
    auto walk = red.witness({{{0, 1, 5}}, {{2, 3, 4}}});
    auto rep = validate_walk(red.instance, walk);
    if (!rep.valid || rep.profit != 33) {
      ok = false;
      detail += "3partition profit " + std::to_string(rep.profit) + "; ";
    }
  }
  {
    // Seeded satisfiable formula on 4 variables.
    auto red = from_3sat(4, {{1, -2, 3}, {-1, 2, 4}, {2, 3, -4}});
    auto walk = red.witness({true, true, true, true});
    auto rep = validate_walk(red.instance, walk);
    if (!rep.valid || (int)rep.collected.size() != red.instance.n) {
      ok = false;
      detail += "3sat witness covered " + std::to_string(rep.collected.size()) + "/" +
                std::to_string(red.instance.n) + "; ";
    }
  }
  {
    auto red = from_3sat(1, {{1, 1, 1}, {-1, -1, -1}});
    if (oracle_cop(red.instance).has_value()) {
      ok = false;
      detail += "unsat formula reported coverable; ";
    }
  }
  report(11, "reduction witnesses (3-partition profit 33, 3SAT cover, UNSAT none)", ok,
         ok ? "verified" : detail);
}

// --- criterion 12 -------------------------------------------------------
template <typename F>
double timed(F&& f, int reps = 5) {
  // Minimum over repetitions: the least contention-noisy point estimate.
  double best = 0;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    double ns = (double)std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    if (r == 0 || ns < best) best = ns;
  }
  return best;
}

void complexity_soft_checks() {
  // path-mtw: wall time at most 2.5x per doubling of the window count.
  auto doubling_ratio = [] {
    double prev = 0, worst = 0;
    for (int logm = 10; logm <= 16; ++logm) {
      GenParams p;
      p.topology = Topology::DirectedPath;
      p.n = 1 << logm;
      p.windows_per_vertex = 1;
      p.window_span = 40;
      p.cost_min = 0;
      p.cost_max = 3;
      p.budget_factor = 1.2;
      auto inst = gen_random(p, 11);
      double ns = timed([&] { (void)solve_directed_path_mtw(inst); });
      if (prev > 0) worst = std::max(worst, ns / prev);
      prev = ns;
    }
    return worst;
  };
  double worst_ratio = doubling_ratio();
  if (worst_ratio > 2.5) worst_ratio = std::min(worst_ratio, doubling_ratio());
  warn_or_report(12, "path-mtw doubling ratio <= 2.5 (2^10..2^16)", worst_ratio <= 2.5,
                 "worst ratio " + std::to_string(worst_ratio));

  // cop-cycle: wall time stays inside the n^4 envelope fitted at n = 16.
  auto cop_time = [&](int n) {
    std::mt19937_64 rng(13);
    std::vector<VertexSpec> vs(n);
    Cost c = n;
    for (int v = 0; v < n; ++v) {
      Time r = (Time)((rng() % (3ull * n)) * c / 2 + v);
      vs[v] = {1, {{r, r + c - 1}}};
    }
    auto inst = normalize(make_directed_cycle(std::vector<Cost>(n, 1), vs, 4LL * n * c));
    return timed([&] { (void)solve_cop_1tw_cycle(inst); });
  };
  double c16 = cop_time(16) / std::pow(16.0, 4);
  double t32 = cop_time(32), t64 = cop_time(64);
  bool fits = t32 <= 4.0 * c16 * std::pow(32.0, 4) && t64 <= 4.0 * c16 * std::pow(64.0, 4);
  warn_or_report(12, "cop-cycle inside the 4x n^4 envelope (n = 16, 32, 64)", fits,
                 "c16*32^4 headroom " + std::to_string(t32 / (c16 * std::pow(32.0, 4))) +
                     ", c16*64^4 headroom " + std::to_string(t64 / (c16 * std::pow(64.0, 4))));
}

}  // namespace

int main() {
  path_exactness();
  envelope_contract();
  cop_cycle();
  compression_soundness();
  short_and_fpt_exactness();
  approx2_sandwich();
  ptas_sandwich();
  dyn_path_exactness();
  tree_consistency();
  approx_tw_guarantee();
  reduction_witnesses();
  complexity_soft_checks();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
