#include "orienteer/json_io.hpp"

#include <json.hpp>

namespace orienteer {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail_input("malformed JSON");
  return j;
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail_input(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail_input(path + "." + key + ": missing");
  return *it;
}

std::int64_t to_i64(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    auto u = j.get<std::uint64_t>();
    if (u >= static_cast<std::uint64_t>(kValueLimit))
      fail_input(path + ": overflow, value must be below 2^62");
    return static_cast<std::int64_t>(u);
  }
  if (!j.is_number_integer()) fail_input(path + ": expected an integer");
  auto v = j.get<std::int64_t>();
  if (v >= kValueLimit || v <= -kValueLimit)
    fail_input(path + ": overflow, value must be below 2^62");
  return v;
}

std::vector<TimeWindow> to_windows(const json& j, const std::string& path) {
  if (!j.is_array()) fail_input(path + ": expected an array of [start, end] pairs");
  std::vector<TimeWindow> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const json& w = j[i];
    if (!w.is_array() || w.size() != 2) fail_input(at + ": expected a [start, end] pair");
    out.push_back({to_i64(w[0], at + "[0]"), to_i64(w[1], at + "[1]")});
  }
  return out;
}

json windows_to_json(const std::vector<TimeWindow>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back({w.release, w.deadline});
  return out;
}

Walk walk_from_json(const json& j, const std::string& path) {
  const json& visits = member(j, "visits", path);
  if (!visits.is_array()) fail_input(path + ".visits: expected an array");
  Walk walk;
  for (size_t i = 0; i < visits.size(); ++i) {
    const std::string at = path + ".visits[" + std::to_string(i) + "]";
    const json& v = visits[i];
    if (!v.is_array() || v.size() != 2) fail_input(at + ": expected a [vertex, time] pair");
    std::int64_t vertex = to_i64(v[0], at + "[0]");
    if (vertex < 0 || vertex > 1'000'000'000) fail_input(at + "[0]: vertex index out of range");
    walk.visits.push_back({static_cast<int>(vertex), to_i64(v[1], at + "[1]")});
  }
  return walk;
}

json walk_to_json(const Walk& walk) {
  json visits = json::array();
  for (const auto& v : walk.visits) visits.push_back({v.vertex, v.time});
  return json{{"visits", visits}};
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = parse_text(text);
  Instance inst;

  const json& topo = member(j, "topology", "instance");
  if (!topo.is_string()) fail_input("instance.topology: expected a string");
  auto t = topology_from_name(topo.get<std::string>());
  if (!t) fail_input("instance.topology: unknown topology '" + topo.get<std::string>() + "'");
  inst.topology = *t;

  std::int64_t n = to_i64(member(j, "n", "instance"), "instance.n");
  if (n < 0 || n > 100'000'000) fail_input("instance.n: out of range");
  inst.n = static_cast<int>(n);
  std::int64_t start = to_i64(member(j, "start", "instance"), "instance.start");
  if (start < 0 || start >= n) fail_input("instance.start: out of range");
  inst.start = static_cast<int>(start);
  inst.budget = to_i64(member(j, "budget", "instance"), "instance.budget");

  const json& vertices = member(j, "vertices", "instance");
  if (!vertices.is_array()) fail_input("instance.vertices: expected an array");
  for (size_t i = 0; i < vertices.size(); ++i) {
    const std::string at = "instance.vertices[" + std::to_string(i) + "]";
    VertexSpec v;
    v.profit = to_i64(member(vertices[i], "profit", at), at + ".profit");
    if (vertices[i].contains("windows"))
      v.windows = to_windows(vertices[i]["windows"], at + ".windows");
    inst.vertices.push_back(std::move(v));
  }

  const json& edges = member(j, "edges", "instance");
  if (!edges.is_array()) fail_input("instance.edges: expected an array");
  for (size_t i = 0; i < edges.size(); ++i) {
    const std::string at = "instance.edges[" + std::to_string(i) + "]";
    EdgeSpec e;
    std::int64_t u = to_i64(member(edges[i], "u", at), at + ".u");
    std::int64_t v = to_i64(member(edges[i], "v", at), at + ".v");
    if (u < 0 || u >= n) fail_input(at + ".u: out of range");
    if (v < 0 || v >= n) fail_input(at + ".v: out of range");
    e.u = static_cast<int>(u);
    e.v = static_cast<int>(v);
    e.cost = to_i64(member(edges[i], "cost", at), at + ".cost");
    if (edges[i].contains("active") && !edges[i]["active"].is_null())
      e.activity = to_windows(edges[i]["active"], at + ".active");
    inst.edges.push_back(std::move(e));
  }

  if (j.contains("timewindowed") && j["timewindowed"].is_boolean())
    inst.timewindowed = j["timewindowed"].get<bool>();

  if (j.contains("decomposition") && !j["decomposition"].is_null()) {
    const json& d = j["decomposition"];
    RawDecomposition dec;
    const json& bags = member(d, "bags", "instance.decomposition");
    if (!bags.is_array()) fail_input("instance.decomposition.bags: expected an array");
    for (size_t b = 0; b < bags.size(); ++b) {
      const std::string at = "instance.decomposition.bags[" + std::to_string(b) + "]";
      if (!bags[b].is_array()) fail_input(at + ": expected an array");
      std::vector<int> bag;
      for (size_t k = 0; k < bags[b].size(); ++k) {
        std::int64_t v = to_i64(bags[b][k], at + "[" + std::to_string(k) + "]");
        if (v < 0 || v >= n) fail_input(at + "[" + std::to_string(k) + "]: vertex out of range");
        bag.push_back(static_cast<int>(v));
      }
      dec.bags.push_back(std::move(bag));
    }
    const json& tree = member(d, "tree", "instance.decomposition");
    if (!tree.is_array()) fail_input("instance.decomposition.tree: expected an array");
    for (size_t k = 0; k < tree.size(); ++k) {
      const std::string at = "instance.decomposition.tree[" + std::to_string(k) + "]";
      if (!tree[k].is_array() || tree[k].size() != 2)
        fail_input(at + ": expected a [parent, child] pair");
      dec.tree.emplace_back(static_cast<int>(to_i64(tree[k][0], at + "[0]")),
                            static_cast<int>(to_i64(tree[k][1], at + "[1]")));
    }
    inst.decomposition = std::move(dec);
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  json j;
  j["topology"] = topology_name(inst.topology);
  j["n"] = inst.n;
  j["start"] = inst.start;
  j["budget"] = inst.budget;
  json vertices = json::array();
  for (const auto& v : inst.vertices)
    vertices.push_back({{"profit", v.profit}, {"windows", windows_to_json(v.windows)}});
  j["vertices"] = std::move(vertices);
  json edges = json::array();
  for (const auto& e : inst.edges) {
    json je = {{"u", e.u}, {"v", e.v}, {"cost", e.cost}};
    if (e.activity) je["active"] = windows_to_json(*e.activity);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  if (inst.timewindowed) j["timewindowed"] = true;
  if (inst.decomposition) {
    json d;
    d["bags"] = inst.decomposition->bags;
    json tree = json::array();
    for (const auto& [p, c] : inst.decomposition->tree) tree.push_back({p, c});
    d["tree"] = std::move(tree);
    j["decomposition"] = std::move(d);
  }
  return j.dump();
}

Walk parse_walk(const std::string& text) {
  return walk_from_json(parse_text(text), "walk");
}

std::string serialize_walk(const Walk& walk) { return walk_to_json(walk).dump(); }

Solution parse_solution(const std::string& text) {
  json j = parse_text(text);
  Solution sol;
  sol.profit = to_i64(member(j, "profit", "solution"), "solution.profit");
  sol.walk = walk_from_json(member(j, "walk", "solution"), "solution.walk");
  const json& alg = member(j, "algorithm", "solution");
  if (!alg.is_string()) fail_input("solution.algorithm: expected a string");
  sol.algorithm = alg.get<std::string>();
  return sol;
}

std::string serialize_solution(const Solution& sol) {
  json j;
  j["profit"] = sol.profit;
  j["walk"] = json::parse(serialize_walk(sol.walk));
  j["algorithm"] = sol.algorithm;
  return j.dump();
}

std::string serialize_walk_report(const WalkReport& rep) {
  json j;
  j["valid"] = rep.valid;
  j["cost"] = rep.cost;
  j["collected"] = rep.collected;
  j["profit"] = rep.profit;
  if (rep.violation) j["violation"] = *rep.violation;
  return j.dump();
}

}  // namespace orienteer
