#include "orienteer/generators.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace orienteer {

Instance gen_random(const GenParams& p, std::uint64_t seed) {
  if (p.n < 1) fail_input("gen_random: n must be positive");
  if (p.cost_min < 0 || p.cost_max < p.cost_min) fail_input("gen_random: bad cost range");
  if (p.profit_max < 0) fail_input("gen_random: bad profit range");
  if (p.windows_per_vertex < 0 || p.window_span < 0) fail_input("gen_random: bad window params");
  if (p.budget_factor < 0) fail_input("gen_random: bad budget factor");
  if (p.topology == Topology::DirectedCycle && p.n < 2)
    fail_input("gen_random: cycle requires n >= 2");

  std::mt19937_64 rng(seed);
  auto draw = [&rng](long long lo, long long hi) {
    return lo + (long long)(rng() % (std::uint64_t)(hi - lo + 1));
  };

  Instance inst;
  inst.topology = p.topology;
  inst.n = p.n;
  inst.start = 0;

  Cost total_cost = 0;
  auto edge = [&](int u, int v) {
    Cost c = draw(p.cost_min, p.cost_max);
    total_cost += c;
    inst.edges.push_back({u, v, c, std::nullopt});
  };
  switch (p.topology) {
    case Topology::DirectedPath:
    case Topology::UndirectedPath:
      for (int i = 0; i + 1 < p.n; ++i) edge(i, i + 1);
      if (p.topology == Topology::UndirectedPath && p.n > 1) inst.start = (int)(rng() % p.n);
      break;
    case Topology::DirectedCycle:
      for (int i = 0; i < p.n; ++i) edge(i, (i + 1) % p.n);
      break;
    case Topology::Tree:
      for (int i = 1; i < p.n; ++i) edge((int)(rng() % i), i);
      inst.start = p.n > 1 ? (int)(rng() % p.n) : 0;
      break;
    case Topology::General: {
      // Partial 2-tree: every new vertex attaches to one or two adjacent
      // existing ones; the construction's bags ship with the instance.
      RawDecomposition dec;
      dec.bags.push_back({0});
      if (p.n > 1) {
        edge(0, 1);
        dec.bags[0] = {0, 1};
      }
      std::vector<std::pair<int, int>> frame{{0, p.n > 1 ? 1 : 0}};
      for (int v = 2; v < p.n; ++v) {
        auto [a, b] = frame[rng() % frame.size()];
        edge(a, v);
        bool second = rng() % 2 == 0 && b != a;
        if (second) edge(b, v);
        dec.bags.push_back({a, b, v});
        std::sort(dec.bags.back().begin(), dec.bags.back().end());
        dec.bags.back().erase(std::unique(dec.bags.back().begin(), dec.bags.back().end()),
                              dec.bags.back().end());
        frame.push_back({a, v});
        if (second) frame.push_back({b, v});
      }
      for (int b = 1; b < (int)dec.bags.size(); ++b) {
        // Parent: any earlier bag sharing the attachment pair.
        int parent = 0;
        for (int q = b - 1; q >= 0; --q) {
          int shared = 0;
          for (int v : dec.bags[b])
            if (std::count(dec.bags[q].begin(), dec.bags[q].end(), v)) ++shared;
          if (shared >= 2 || (q == 0 && parent == 0)) {
            parent = q;
            if (shared >= 2) break;
          }
        }
        dec.tree.push_back({parent, b});
      }
      inst.decomposition = dec;
      inst.start = p.n > 1 ? (int)(rng() % p.n) : 0;
      break;
    }
  }

  inst.budget = std::max<Time>(1, (Time)((double)total_cost * p.budget_factor));
  for (int v = 0; v < p.n; ++v) {
    VertexSpec spec;
    spec.profit = draw(0, p.profit_max);
    int wins = p.windows_per_vertex > 0 ? (int)(rng() % (p.windows_per_vertex + 1)) : 0;
    for (int w = 0; w < wins; ++w) {
      Time r = draw(0, std::max<Time>(inst.budget, 1));
      Time d = r + draw(0, p.window_span);
      spec.windows.push_back({r, d});
    }
    inst.vertices.push_back(std::move(spec));
  }
  if (p.dynamic)
    for (auto& e : inst.edges)
      if (rng() % 2 == 0) {
        int m = 1 + (int)(rng() % 2);
        std::vector<TimeWindow> act;
        Time at = 0;
        for (int i = 0; i < m; ++i) {
          Time a = at + draw(0, 5);
          Time b = a + std::max<Time>(e.cost, draw(1, 6));
          act.push_back({a, b});
          at = b + 2;
        }
        e.activity = act;
      }

  inst = normalize(inst);
  auto rep = validate_instance(inst);
  if (!rep.valid())
    fail_internal("gen_random produced an invalid instance: " + rep.issues.front());
  return inst;
}

LineTspInstance from_line_tsp(std::vector<LineTspJob> jobs) {
  if (jobs.empty()) fail_input("from_line_tsp: empty job list");
  for (const auto& j : jobs)
    if (j.release < 0 || j.release > j.deadline)
      fail_input("from_line_tsp: malformed job window");
  std::sort(jobs.begin(), jobs.end(), [](const LineTspJob& a, const LineTspJob& b) {
    return a.position < b.position;
  });
  const long long n = (long long)jobs.size();
  const long long scale = n * n;

  Instance inst;
  inst.topology = Topology::UndirectedPath;
  Time dmax = 0;
  std::vector<int> job_vertex;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (i > 0) {
      long long gap = jobs[i].position - jobs[i - 1].position;
      long long intermediates = gap == 0 ? 0 : gap * scale - 1;
      for (long long k = 0; k < intermediates; ++k) inst.vertices.push_back({1, {}});
    }
    VertexSpec spec;
    spec.profit = 1;
    spec.windows.push_back({jobs[i].release * scale, jobs[i].deadline * scale + n});
    dmax = std::max<Time>(dmax, jobs[i].deadline * scale + n);
    job_vertex.push_back((int)inst.vertices.size());
    inst.vertices.push_back(std::move(spec));
  }
  inst.n = (int)inst.vertices.size();
  for (int i = 0; i + 1 < inst.n; ++i) inst.edges.push_back({i, i + 1, 1, std::nullopt});
  inst.start = job_vertex.front();
  inst.budget = dmax;
  return {normalize(inst), (int)jobs.size()};
}

SatReduction from_3sat(int variables, const std::vector<Clause>& clauses) {
  if (variables < 1) fail_input("from_3sat: need at least one variable");
  for (const auto& cl : clauses)
    for (int lit : {cl.a, cl.b, cl.c})
      if (lit == 0 || std::abs(lit) > variables)
        fail_input("from_3sat: literal out of range");

  const long long n = variables;
  const long long m = (long long)clauses.size();
  const long long C = n + m;

  Instance inst;
  inst.topology = Topology::DirectedCycle;
  inst.n = (int)C;
  inst.start = 0;
  std::vector<std::vector<Time>> points(C);
  for (long long i = 1; i <= n; ++i) {
    points[i - 1].push_back(2 * i * C);
    points[i - 1].push_back(2 * i * C + C - 1);
  }
  for (long long j = 1; j <= m; ++j) {
    const Clause& cl = clauses[j - 1];
    for (int lit : {cl.a, cl.b, cl.c}) {
      long long i = std::abs(lit);
      if (lit > 0)
        points[n + j - 1].push_back(2 * i * C + (n + j - i));
      else
        points[n + j - 1].push_back(2 * i * C + C - (m - j + i) - 1);
    }
  }
  Time dmax = 0;
  for (auto& ps : points) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (Time t : ps) dmax = std::max(dmax, t);
  }
  for (long long v = 0; v < C; ++v) {
    VertexSpec spec;
    spec.profit = 1;
    for (Time t : points[v]) spec.windows.push_back({t, t});
    inst.vertices.push_back(std::move(spec));
  }
  for (long long v = 0; v < C; ++v)
    inst.edges.push_back({(int)v, (int)((v + 1) % C), 1, std::nullopt});
  inst.budget = dmax;
  Instance norm = normalize(inst);

  auto witness = [norm, n, m, C](const std::vector<bool>& assignment) -> Walk {
    if ((long long)assignment.size() != n)
      fail_input("witness: assignment size mismatch");
    Walk walk;
    walk.visits = {{0, 0}};
    Time t = 0;
    int at = 0;
    auto hop = [&](int steps) {
      for (int s = 0; s < steps; ++s) {
        at = (int)((at + 1) % C);
        t += 1;
        walk.visits.push_back({at, t});
      }
    };
    auto wait_until = [&](Time target) {
      if (target > t) {
        walk.visits.push_back({at, target});
        t = target;
      }
    };
    for (long long i = 1; i <= n; ++i) {
      // Arrive at the variable vertex (position i-1).
      int target = (int)(i - 1);
      int steps = (int)((target - at + C) % C);
      hop(steps);
      if (assignment[i - 1]) {
        wait_until(2 * i * C);  // collect the "true" point
        // Sweep the positive clause points; the last variable stops at the
        // final clause vertex to stay within the budget.
        hop(i < n ? (int)C + 1 : (int)(C - i));
      } else {
        wait_until(2 * i * C - 1);  // lap timed to sweep negated clause points
        hop((int)C);                // back here exactly at 2iC + C - 1
        if (i < n) hop(1);
      }
    }
    return walk;
  };

  return {norm, variables, (int)m, witness};
}

PartitionReduction from_3partition(const std::vector<long long>& integers) {
  if (integers.empty() || integers.size() % 3 != 0)
    fail_input("from_3partition: need 3m integers");
  const long long m = (long long)integers.size() / 3;
  long long sum = 0;
  for (long long s : integers) sum += s;
  if (sum % m != 0) fail_input("from_3partition: sum is not divisible by m");
  const long long t = sum / m;
  // Canonical 3-partition band: elements strictly between T/4 and T/2, so a
  // group of exactly three is forced.
  for (long long s : integers)
    if (!(4 * s > t && 2 * s < t))
      fail_input("from_3partition: every element must lie strictly between T/4 and T/2");

  const Time horizon = 2 * m * t + 2 * m;
  Instance inst;
  inst.topology = Topology::Tree;
  inst.start = 0;
  inst.vertices.push_back({1, {}});  // centre
  std::vector<int> leg_tip(integers.size());
  std::vector<std::vector<int>> leg_vertices(integers.size());
  for (size_t i = 0; i < integers.size(); ++i) {
    int prev = 0;
    for (long long d = 0; d < integers[i]; ++d) {
      int v = (int)inst.vertices.size();
      inst.vertices.push_back({1, {}});
      inst.edges.push_back({prev, v, 1, std::vector<TimeWindow>{{0, horizon}}});
      leg_vertices[i].push_back(v);
      prev = v;
    }
    leg_tip[i] = prev;
  }
  std::vector<int> control(m);
  for (long long i = 1; i <= m; ++i) {
    int v = (int)inst.vertices.size();
    inst.vertices.push_back({1, {}});
    Time a = 2 * i * t + 2 * (i - 1);
    inst.edges.push_back({0, v, 1, std::vector<TimeWindow>{{a, a + 2}}});
    control[i - 1] = v;
  }
  inst.n = (int)inst.vertices.size();
  inst.budget = horizon;
  Instance norm = normalize(inst);
  Profit target = m + m * t + 1;

  auto witness = [norm, leg_vertices, control, m,
                  t](const std::vector<std::array<int, 3>>& groups) -> Walk {
    if ((long long)groups.size() != m) fail_input("witness: need m triples");
    Walk walk;
    walk.visits = {{0, 0}};
    Time now = 0;
    for (long long g = 0; g < m; ++g) {
      for (int idx : groups[g]) {
        if (idx < 0 || idx >= (int)leg_vertices.size())
          fail_input("witness: leg index out of range");
        for (int v : leg_vertices[idx]) walk.visits.push_back({v, ++now});
        for (auto it = leg_vertices[idx].rbegin() + 1; it != leg_vertices[idx].rend(); ++it)
          walk.visits.push_back({*it, ++now});
        walk.visits.push_back({0, ++now});
      }
      walk.visits.push_back({control[g], ++now});
      walk.visits.push_back({0, ++now});
    }
    return walk;
  };

  return {norm, m, t, target, witness};
}

Instance from_knapsack(const std::vector<KnapsackItem>& items, Cost capacity) {
  Instance inst;
  inst.topology = Topology::Tree;
  inst.start = 0;
  inst.vertices.push_back({0, {}});
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].size % 2 != 0)
      fail_input("from_knapsack: odd size at item " + std::to_string(i));
    if (items[i].size < 0 || items[i].value < 0)
      fail_input("from_knapsack: negative item");
    int v = (int)inst.vertices.size();
    inst.vertices.push_back({items[i].value, {}});
    inst.edges.push_back({0, v, items[i].size / 2, std::nullopt});
  }
  inst.n = (int)inst.vertices.size();
  inst.budget = capacity;
  return normalize(inst);
}

std::pair<int, std::vector<Clause>> parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int vars = -1, clauses = -1;
  std::vector<Clause> out;
  std::vector<int> lits;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      ls >> p >> cnf >> vars >> clauses;
      if (cnf != "cnf" || vars < 1 || clauses < 0) fail_input("dimacs: bad problem line");
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (lits.size() != 3) fail_input("dimacs: every clause must have exactly 3 literals");
        out.push_back({lits[0], lits[1], lits[2]});
        lits.clear();
      } else {
        lits.push_back(lit);
      }
    }
  }
  if (!lits.empty()) fail_input("dimacs: clause not terminated by 0");
  if (vars < 0) fail_input("dimacs: missing problem line");
  if (clauses >= 0 && (int)out.size() != clauses)
    fail_input("dimacs: clause count mismatch");
  return {vars, out};
}

}  // namespace orienteer
