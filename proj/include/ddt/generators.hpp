#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "model.hpp"

namespace ddt {

struct RandomSizes {
  int max_n = 8;
  int max_k = 5;
  int max_len = 10;
  bool zero_lengths = true;
};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool chance(int percent) { return uniform(0, 99) < percent; }
  Rational speed() {
    static const int speeds[] = {1, 2, 3, 5};
    return Rational(speeds[uniform(0, 3)]);
  }
  Rational length(const RandomSizes& sz) { return Rational(uniform(sz.zero_lengths ? 0 : 1, sz.max_len)); }

 private:
  std::mt19937_64 gen_;
};

inline Instance named_vertices(int n) {
  Instance inst;
  for (int v = 0; v < n; ++v) inst.graph.add_vertex("v" + std::to_string(v));
  return inst;
}

}  // namespace detail

// Path x0..x{n-1} with interval agents.
inline Instance random_path_instance(std::uint64_t seed, RandomSizes sz = {12, 6, 10, true}) {
  if (sz.max_n < 1 || sz.max_k < 1) throw Error("random path needs at least one vertex and one agent");
  detail::Rng rng(seed);
  int n = rng.uniform(std::min(2, sz.max_n), sz.max_n);
  int k = rng.uniform(1, sz.max_k);
  Instance inst;
  for (int v = 0; v < n; ++v) inst.graph.add_vertex("x" + std::to_string(v));
  for (int v = 0; v + 1 < n; ++v) inst.graph.add_edge(v, v + 1, rng.length(sz));
  inst.source = rng.uniform(0, n - 1);
  inst.target = rng.uniform(0, n - 1);
  if (n > 1) {
    while (inst.target == inst.source) inst.target = rng.uniform(0, n - 1);
  }
  for (int a = 0; a < k; ++a) {
    int l = rng.uniform(0, n - 1);
    int r = rng.uniform(0, n - 1);
    if (l > r) std::swap(l, r);
    Agent ag;
    ag.id = "a" + std::to_string(a + 1);
    ag.speed = rng.speed();
    for (int v = l; v <= r; ++v) ag.vertices.push_back(v);
    normalize_agent(inst.graph, ag);
    inst.agents.push_back(std::move(ag));
  }
  validate_instance(inst);
  return inst;
}

// Connected random graph; agents are random connected vertex sets, sometimes with a sparser edge set
// than the induced one.
inline Instance random_graph_instance(std::uint64_t seed, RandomSizes sz = {}) {
  if (sz.max_n < 2 || sz.max_k < 1) throw Error("random graph needs two vertices and one agent");
  detail::Rng rng(seed);
  int n = rng.uniform(2, sz.max_n);
  int k = rng.uniform(1, sz.max_k);
  Instance inst = detail::named_vertices(n);
  std::set<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) pairs.insert({rng.uniform(0, v - 1), v});
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.chance(25)) pairs.insert({u, v});
    }
  }
  for (auto [u, v] : pairs) inst.graph.add_edge(u, v, rng.length(sz));
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : pairs) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  inst.source = rng.uniform(0, n - 1);
  do {
    inst.target = rng.uniform(0, n - 1);
  } while (inst.target == inst.source);

  for (int a = 0; a < k; ++a) {
    int size = rng.uniform(1, std::min(n, 5));
    std::vector<int> area{rng.uniform(0, n - 1)};
    std::vector<std::pair<int, int>> tree;
    while (static_cast<int>(area.size()) < size) {
      std::vector<std::pair<int, int>> frontier;
      for (int x : area) {
        for (int y : adj[x]) {
          if (std::find(area.begin(), area.end(), y) == area.end()) frontier.emplace_back(x, y);
        }
      }
      if (frontier.empty()) break;
      auto [x, y] = frontier[rng.uniform(0, static_cast<int>(frontier.size()) - 1)];
      area.push_back(y);
      tree.emplace_back(x, y);
    }
    Agent ag;
    ag.id = "a" + std::to_string(a + 1);
    ag.speed = rng.speed();
    ag.vertices = area;
    if (rng.chance(30)) {
      ag.explicit_edges = true;
      ag.edges = tree;
    }
    normalize_agent(inst.graph, ag);
    inst.agents.push_back(std::move(ag));
  }
  validate_instance(inst);
  return inst;
}

// Agents arranged as a random tree; each tree edge gets its own shared vertex, so every vertex is covered
// by at most two agents and the intersection graph is exactly that tree.
inline Instance tree_intersection_instance(std::uint64_t seed, RandomSizes sz = {20, 6, 10, true}) {
  if (sz.max_k < 1) throw Error("tree-intersection instance needs an agent");
  detail::Rng rng(seed);
  int k = rng.uniform(1, sz.max_k);
  std::vector<std::vector<int>> area(k);
  Instance inst;
  auto vertex = [&](const std::string& name) { return inst.graph.add_vertex(name); };
  for (int a = 0; a < k; ++a) {
    int priv = rng.uniform(a == 0 ? 1 : 0, 2);
    for (int i = 0; i < priv; ++i) area[a].push_back(vertex("p" + std::to_string(a + 1) + "_" + std::to_string(i)));
  }
  for (int a = 1; a < k; ++a) {
    int parent = rng.uniform(0, a - 1);
    int x = vertex("s" + std::to_string(parent + 1) + "_" + std::to_string(a + 1));
    area[parent].push_back(x);
    area[a].push_back(x);
  }
  for (int a = 0; a < k; ++a) {
    auto& vs = area[a];
    for (std::size_t i = 1; i < vs.size(); ++i) {
      int j = rng.uniform(0, static_cast<int>(i) - 1);
      inst.graph.add_edge(vs[j], vs[i], rng.length(sz));
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (rng.chance(20) && !inst.graph.pair_length(vs[i], vs[j])) inst.graph.add_edge(vs[i], vs[j], rng.length(sz));
      }
    }
  }
  int n = inst.graph.size();
  inst.source = rng.uniform(0, n - 1);
  inst.target = rng.uniform(0, n - 1);
  if (n > 1) {
    while (inst.target == inst.source) inst.target = rng.uniform(0, n - 1);
  }
  for (int a = 0; a < k; ++a) {
    Agent ag;
    ag.id = "a" + std::to_string(a + 1);
    ag.speed = rng.speed();
    ag.vertices = area[a];
    normalize_agent(inst.graph, ag);
    inst.agents.push_back(std::move(ag));
  }
  validate_instance(inst);
  return inst;
}

}  // namespace ddt
