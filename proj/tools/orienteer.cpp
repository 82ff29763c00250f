#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

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

namespace {

using namespace orienteer;

enum ExitCode { kOk = 0, kInfeasible = 1, kInputError = 2, kResourceError = 3, kInternalBug = 4 };

int log_level() {
  const char* env = std::getenv("ORIENTEER_LOG");
  if (env == nullptr) return 0;
  std::string v = env;
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

[[noreturn]] void emit_error(ErrorKind kind, const std::string& detail) {
  const char* name = kind == ErrorKind::Input      ? "input"
                     : kind == ErrorKind::Resource ? "resource"
                                                   : "internal";
  std::cerr << "{\"error\":{\"kind\":\"" << name << "\",\"detail\":\"";
  for (char c : detail) {
    if (c == '"' || c == '\\') std::cerr << '\\';
    if (c == '\n') {
      std::cerr << ' ';
      continue;
    }
    std::cerr << c;
  }
  std::cerr << "\"}}" << std::endl;
  int code = kind == ErrorKind::Input      ? kInputError
             : kind == ErrorKind::Resource ? kResourceError
                                           : kInternalBug;
  std::exit(code);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail_input("cannot write file: " + path);
  out << text << "\n";
}

void deliver(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text << std::endl;
  else
    spill(out_path, text);
}

struct SolveFlags {
  int k = 1;
  double epsilon = 0.5;
  CycleCaps cycle;
  TwCaps tw;
  OracleCaps oracle;
};

std::optional<Solution> run_algorithm(const std::string& algorithm, const Instance& inst,
                                      const SolveFlags& flags) {
  if (algorithm == "path-mtw") return solve_directed_path_mtw(inst);
  if (algorithm == "cop-cycle") {
    auto walk = solve_cop_1tw_cycle(inst);
    if (!walk) return std::nullopt;
    Solution sol;
    sol.algorithm = "cop-cycle";
    sol.walk = *walk;
    sol.profit = validate_walk(normalize(inst), *walk).profit;
    return sol;
  }
  if (algorithm == "cycle-short") return solve_op_1tw_cycle_short(inst, flags.cycle);
  if (algorithm == "cycle-fpt") return solve_op_1tw_cycle_fpt(inst, flags.cycle);
  if (algorithm == "cycle-2approx") return approx2_op_1tw_cycle(inst, flags.cycle);
  if (algorithm == "cycle-kround") return solve_k_rounds(inst, flags.k, flags.cycle);
  if (algorithm == "cycle-workout")
    return solve_k_workout(inst, flags.k, flags.cycle).solution;
  if (algorithm == "cycle-ptas") return ptas_op_1tw_cycle(inst, flags.epsilon, flags.cycle);
  if (algorithm == "dyn-path") return solve_dyn_undirected_path(inst);
  if (algorithm == "dyn-chain") return solve_dyn_directed_chain(inst);
  if (algorithm == "tree-dp") return solve_tree(inst);
  if (algorithm == "tw-dp") {
    auto dec = build_nice_decomposition(inst);
    return solve_tw(inst, dec, flags.tw);
  }
  if (algorithm == "tw-approx") {
    auto dec = build_nice_decomposition(inst);
    return approx_tw(inst, dec, flags.epsilon, flags.tw);
  }
  fail_input("unknown algorithm: " + algorithm);
}

int solve_one(const std::string& algorithm, const std::string& text, const SolveFlags& flags,
              const std::string& out_path) {
  Instance inst = parse_instance(text);
  Instance norm = require_valid(inst);
  auto sol = run_algorithm(algorithm, norm, flags);
  if (!sol) {
    log_info("covering problem infeasible");
    return kInfeasible;
  }
  auto rep = validate_walk(norm, sol->walk);
  if (!rep.valid || rep.profit != sol->profit)
    fail_internal("emitted walk disagrees with its claimed profit");
  deliver(out_path, serialize_solution(*sol));
  return kOk;
}

double median_ns(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

template <typename F>
double time_ns(F&& f, int repetitions) {
  std::vector<double> runs;
  for (int r = 0; r < repetitions; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    runs.push_back((double)std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  return median_ns(runs);
}

int run_bench(const std::string& suite, std::vector<long long> sizes, std::uint64_t seed,
              int repetitions) {
  if (repetitions < 1) fail_input("bench: repetitions must be positive");
  if (sizes.empty()) {
    if (suite == "cop-cycle")
      sizes = {16, 32, 64};
    else
      sizes = {1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14, 1 << 15, 1 << 16};
  }
  std::cout << "size,median_ns,ratio_to_previous\n";
  double prev = 0;
  for (long long size : sizes) {
    double ns = 0;
    if (suite == "path-mtw") {
      GenParams p;
      p.topology = Topology::DirectedPath;
      p.n = (int)size;
      p.windows_per_vertex = 1;
      p.window_span = 40;
      p.cost_min = 0;
      p.cost_max = 3;
      p.budget_factor = 1.2;
      auto inst = gen_random(p, seed);
      ns = time_ns([&] { (void)solve_directed_path_mtw(inst); }, repetitions);
    } else if (suite == "cop-cycle") {
      GenParams p;
      p.topology = Topology::DirectedCycle;
      p.n = (int)size;
      p.cost_min = 1;
      p.cost_max = 1;
      p.windows_per_vertex = 0;
      auto inst = gen_random(p, seed);
      // Tight staggered windows force a long repair cascade.
      std::mt19937_64 rng(seed);
      Cost c = cycle_length(inst);
      inst.budget = 4 * (Time)inst.n * c;
      for (int v = 0; v < inst.n; ++v) {
        Time r = (Time)((rng() % (3 * (std::uint64_t)inst.n)) * c / 2 + v);
        inst.vertices[v].windows = {{r, r + c - 1}};
      }
      inst = normalize(inst);
      ns = time_ns([&] { (void)solve_cop_1tw_cycle(inst); }, repetitions);
    } else if (suite == "envelope") {
      std::mt19937_64 rng(seed);
      Time horizon = 4 * size;
      std::vector<std::tuple<Time, Time, Profit>> windows;
      for (long long i = 0; i < size; ++i) {
        Time r = (Time)(rng() % horizon);
        Time d = r + (Time)(rng() % (horizon - r));
        windows.push_back({r, d, (Profit)(rng() % 9)});
      }
      ns = time_ns(
          [&] {
            ProfitEnvelope env(horizon, 0, 0);
            for (auto [r, d, p] : windows) env.apply_window(r, d, p);
          },
          repetitions);
    } else {
      fail_input("bench: unknown suite " + suite);
    }
    std::cout << size << "," << (long long)ns << ","
              << (prev > 0 ? std::to_string(ns / prev) : "") << "\n";
    prev = ns;
  }
  return kOk;
}

std::vector<std::array<int, 3>> parse_partition_arg(const std::string& text) {
  std::vector<std::array<int, 3>> groups;
  std::istringstream in(text);
  std::string group;
  while (std::getline(in, group, ';')) {
    std::array<int, 3> g{};
    if (sscanf(group.c_str(), "%d,%d,%d", &g[0], &g[1], &g[2]) != 3)
      fail_input("expected index triples like 0,1,5;2,3,4");
    groups.push_back(g);
  }
  return groups;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orienteering solvers on restricted graph classes"};
  app.require_subcommand(1);

  std::string algorithm, input, input_dir, out_path, walk_path;
  SolveFlags flags;
  auto* solve = app.add_subcommand("solve", "run a solver on an instance");
  solve->add_option("--algorithm", algorithm, "solver name")->required();
  solve->add_option("--input", input, "instance JSON file");
  solve->add_option("--input-dir", input_dir, "solve every .json instance in a directory");
  solve->add_option("--out", out_path, "write the solution here instead of stdout");
  solve->add_option("--k", flags.k, "round parameter for cycle-kround/cycle-workout");
  solve->add_option("--epsilon", flags.epsilon, "epsilon for cycle-ptas/tw-approx");
  solve->add_option("--max-k-rounds", flags.cycle.max_k_rounds, "cap for the k-round DP");
  solve->add_option("--max-long-windows", flags.cycle.max_long_windows, "FPT subset cap");
  solve->add_option("--max-unwrap", flags.cycle.max_unwrap, "unwrapped path size cap");
  solve->add_option("--max-candidates", flags.cycle.max_candidates, "candidate time cap");
  solve->add_option("--max-width", flags.tw.max_width, "tree decomposition width cap");

  bool cop_mode = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive exact search at desk scale");
  oracle_cmd->add_option("--input", input, "instance JSON file")->required();
  oracle_cmd->add_flag("--cop", cop_mode, "decide coverability instead of maximizing");
  oracle_cmd->add_option("--out", out_path, "write the result here");
  oracle_cmd->add_option("--max-profitable", flags.oracle.max_profitable,
                         "bitmask cap on profit-bearing vertices");
  oracle_cmd->add_option("--max-states", flags.oracle.max_states, "search state cap");

  auto* verify = app.add_subcommand("verify", "validate and score a walk");
  verify->add_option("--input", input, "instance JSON file")->required();
  verify->add_option("--walk", walk_path, "walk JSON file")->required();

  std::string map_path;
  auto* compress = app.add_subcommand("compress", "deadline compression for a cycle instance");
  compress->add_option("--input", input, "instance JSON file")->required();
  compress->add_option("--out", out_path, "write the compressed instance here");
  compress->add_option("--map", map_path, "write the compressed->original anchors here");

  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  std::uint64_t seed = 1;
  std::string witness_path;

  GenParams gp;
  std::string topo_name = "directed_path";
  auto* gen_rand = gen->add_subcommand("random", "seeded random instance");
  gen_rand->add_option("--seed", seed, "RNG seed");
  gen_rand->add_option("--topology", topo_name,
                       "directed_path|directed_cycle|undirected_path|tree|general");
  gen_rand->add_option("--n", gp.n, "vertex count");
  gen_rand->add_option("--cost-min", gp.cost_min, "minimal edge cost");
  gen_rand->add_option("--cost-max", gp.cost_max, "maximal edge cost");
  gen_rand->add_option("--profit-max", gp.profit_max, "maximal vertex profit");
  gen_rand->add_option("--windows", gp.windows_per_vertex, "max windows per vertex");
  gen_rand->add_option("--window-span", gp.window_span, "max window length");
  gen_rand->add_option("--budget-factor", gp.budget_factor, "budget / total edge cost");
  gen_rand->add_flag("--dynamic", gp.dynamic, "draw edge activity intervals");
  gen_rand->add_option("--out", out_path, "write the instance here");

  std::string jobs_arg;
  auto* gen_line = gen->add_subcommand("linetsp", "line-TSP reduction");
  gen_line->add_option("--jobs", jobs_arg, "jobs as x,r,d;x,r,d;...")->required();
  gen_line->add_option("--out", out_path, "write the instance here");

  std::string cnf_path, assignment_arg;
  auto* gen_sat = gen->add_subcommand("3sat", "3SAT to COP-MTW cycle reduction");
  gen_sat->add_option("--cnf", cnf_path, "DIMACS CNF file (3 literals per clause)")->required();
  gen_sat->add_option("--out", out_path, "write the instance here");
  gen_sat->add_option("--witness", witness_path, "write a covering walk here");
  gen_sat->add_option("--assignment", assignment_arg,
                      "satisfying assignment bits, e.g. 1,0,1 (needed for --witness)");

  std::string multiset_arg, partition_arg;
  auto* gen_part = gen->add_subcommand("3partition", "3-partition to dynamic spider reduction");
  gen_part->add_option("--multiset", multiset_arg, "integers, e.g. 4,5,5,5,5,6")->required();
  gen_part->add_option("--out", out_path, "write the instance here");
  gen_part->add_option("--witness", witness_path, "write a full-profit walk here");
  gen_part->add_option("--partition", partition_arg,
                       "index triples, e.g. 0,1,5;2,3,4 (needed for --witness)");

  std::string items_arg;
  long long capacity = 0;
  auto* gen_knap = gen->add_subcommand("knapsack", "knapsack to star-tree reduction");
  gen_knap->add_option("--items", items_arg, "size,value;size,value;...")->required();
  gen_knap->add_option("--capacity", capacity, "budget")->required();
  gen_knap->add_option("--out", out_path, "write the instance here");

  std::string suite = "path-mtw";
  std::vector<long long> sizes;
  int repetitions = 3;
  auto* bench = app.add_subcommand("bench", "timing tables for the complexity soft checks");
  bench->add_option("--suite", suite, "path-mtw|cop-cycle|envelope");
  bench->add_option("--sizes", sizes, "instance sizes");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--repetitions", repetitions, "runs per size (median reported)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (input.empty() == input_dir.empty())
        fail_input("solve needs exactly one of --input or --input-dir");
      if (!input.empty()) return solve_one(algorithm, slurp(input), flags, out_path);
      namespace fs = std::filesystem;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(input_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      int worst = kOk;
      for (const auto& file : files) {
        log_info("solving " + file.string());
        Instance inst = require_valid(parse_instance(slurp(file.string())));
        auto sol = run_algorithm(algorithm, inst, flags);
        if (!sol) {
          std::cout << "{\"file\":\"" << file.filename().string() << "\",\"infeasible\":true}\n";
          worst = std::max(worst, (int)kInfeasible);
          continue;
        }
        std::cout << "{\"file\":\"" << file.filename().string()
                  << "\",\"solution\":" << serialize_solution(*sol) << "}\n";
      }
      return worst;
    }
    if (oracle_cmd->parsed()) {
      Instance inst = require_valid(parse_instance(slurp(input)));
      if (cop_mode) {
        auto walk = oracle_cop(inst, flags.oracle);
        if (!walk) return kInfeasible;
        Solution sol;
        sol.algorithm = "oracle-cop";
        sol.walk = *walk;
        sol.profit = validate_walk(inst, *walk).profit;
        deliver(out_path, serialize_solution(sol));
        return kOk;
      }
      deliver(out_path, serialize_solution(oracle_op(inst, flags.oracle)));
      return kOk;
    }
    if (verify->parsed()) {
      Instance inst = require_valid(parse_instance(slurp(input)));
      Walk walk = parse_walk(slurp(walk_path));
      auto rep = validate_walk(inst, walk);
      std::cout << serialize_walk_report(rep) << std::endl;
      return rep.valid ? kOk : kInfeasible;
    }
    if (compress->parsed()) {
      Instance inst = parse_instance(slurp(input));
      auto [comp, map] = compress_deadlines(inst);
      deliver(out_path, serialize_instance(comp));
      if (!map_path.empty()) {
        std::ostringstream os;
        os << "{\"identity\":" << (map.identity ? "true" : "false") << ",\"anchors\":[";
        for (size_t i = 0; i < map.anchors.size(); ++i)
          os << (i ? "," : "") << "[" << map.anchors[i].first << "," << map.anchors[i].second
             << "]";
        os << "]}";
        spill(map_path, os.str());
      }
      return kOk;
    }
    if (gen_rand->parsed()) {
      auto topo = topology_from_name(topo_name);
      if (!topo) fail_input("unknown topology: " + topo_name);
      gp.topology = *topo;
      deliver(out_path, serialize_instance(gen_random(gp, seed)));
      return kOk;
    }
    if (gen_line->parsed()) {
      std::vector<LineTspJob> jobs;
      std::istringstream in(jobs_arg);
      std::string one;
      while (std::getline(in, one, ';')) {
        LineTspJob job{};
        if (sscanf(one.c_str(), "%lld,%lld,%lld", &job.position, &job.release, &job.deadline) != 3)
          fail_input("expected jobs like 0,0,4;2,1,9");
        jobs.push_back(job);
      }
      auto red = from_line_tsp(jobs);
      deliver(out_path, serialize_instance(red.instance));
      log_info("jobs: " + std::to_string(red.n_jobs));
      return kOk;
    }
    if (gen_sat->parsed()) {
      auto [vars, clauses] = parse_dimacs(slurp(cnf_path));
      auto red = from_3sat(vars, clauses);
      deliver(out_path, serialize_instance(red.instance));
      if (!witness_path.empty()) {
        if (assignment_arg.empty()) fail_input("--witness needs --assignment");
        std::vector<bool> bits;
        for (char c : assignment_arg)
          if (c == '0' || c == '1') bits.push_back(c == '1');
        if ((int)bits.size() != vars) fail_input("assignment must name every variable");
        spill(witness_path, serialize_walk(red.witness(bits)));
      }
      return kOk;
    }
    if (gen_part->parsed()) {
      std::vector<long long> integers;
      std::istringstream in(multiset_arg);
      std::string one;
      while (std::getline(in, one, ',')) integers.push_back(std::stoll(one));
      auto red = from_3partition(integers);
      deliver(out_path, serialize_instance(red.instance));
      if (!witness_path.empty()) {
        if (partition_arg.empty()) fail_input("--witness needs --partition");
        spill(witness_path, serialize_walk(red.witness(parse_partition_arg(partition_arg))));
      }
      return kOk;
    }
    if (gen_knap->parsed()) {
      std::vector<KnapsackItem> items;
      std::istringstream in(items_arg);
      std::string one;
      while (std::getline(in, one, ';')) {
        KnapsackItem item{};
        if (sscanf(one.c_str(), "%lld,%lld", &item.size, &item.value) != 2)
          fail_input("expected items like 2,3;4,5");
        items.push_back(item);
      }
      deliver(out_path, serialize_instance(from_knapsack(items, capacity)));
      return kOk;
    }
    if (bench->parsed()) return run_bench(suite, sizes, seed, repetitions);
  } catch (const Error& e) {
    emit_error(e.kind(), e.what());
  } catch (const std::exception& e) {
    emit_error(ErrorKind::Internal, e.what());
  }
  return kInputError;
}
