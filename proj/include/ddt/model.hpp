#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace ddt {

class ValidationError : public Error {
 public:
  using Error::Error;
};

struct Edge {
  int u = 0;
  int v = 0;
  Rational len;
};

// Undirected multigraph over named vertices. Vertex ids are dense indices into names.
class Graph {
 public:
  int add_vertex(const std::string& name) {
    if (index_.count(name)) throw ValidationError("duplicate vertex '" + name + "'");
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    adj_.emplace_back();
    return id;
  }

  void add_edge(int u, int v, Rational len) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop at '" + names_[u] + "'");
    if (len.sign() < 0) throw ValidationError("negative edge length");
    int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v, len});
    adj_[u].push_back(id);
    adj_[v].push_back(id);
    auto key = pair_key(u, v);
    auto it = pair_len_.find(key);
    if (it == pair_len_.end() || len < it->second) pair_len_[key] = len;
  }

  [[nodiscard]] int size() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::string& name(int v) const { return names_.at(v); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<int>& incident(int v) const { return adj_.at(v); }

  [[nodiscard]] std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] int at(const std::string& name) const {
    auto id = find(name);
    if (!id) throw ValidationError("unknown vertex '" + name + "'");
    return *id;
  }

  // Parallel edges collapse to their shortest representative.
  [[nodiscard]] std::optional<Rational> pair_length(int u, int v) const {
    auto it = pair_len_.find(pair_key(u, v));
    if (it == pair_len_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] const std::map<std::pair<int, int>, Rational>& pairs() const { return pair_len_; }

  static std::pair<int, int> pair_key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::map<std::pair<int, int>, Rational> pair_len_;
};

struct Agent {
  std::string id;
  Rational speed{1};
  std::vector<int> vertices;                // sorted
  std::vector<std::pair<int, int>> edges;   // normalized (u < v), sorted
  bool explicit_edges = false;
  std::optional<int> start;

  [[nodiscard]] bool covers(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
  [[nodiscard]] bool has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), Graph::pair_key(u, v));
  }
};

struct Instance {
  Graph graph;
  int source = 0;
  int target = 0;
  std::vector<Agent> agents;

  [[nodiscard]] int k() const { return static_cast<int>(agents.size()); }
  [[nodiscard]] int n() const { return graph.size(); }

  [[nodiscard]] int agent_index(const std::string& id) const {
    for (int i = 0; i < k(); ++i) {
      if (agents[i].id == id) return i;
    }
    throw ValidationError("unknown agent '" + id + "'");
  }
};

inline std::vector<std::pair<int, int>> induced_edges(const Graph& g, const std::vector<int>& vertices) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, len] : g.pairs()) {
    (void)len;
    if (std::binary_search(vertices.begin(), vertices.end(), key.first) &&
        std::binary_search(vertices.begin(), vertices.end(), key.second)) {
      out.push_back(key);
    }
  }
  return out;
}

// Normalizes an agent area and fills in induced edges when none were given.
inline void normalize_agent(const Graph& g, Agent& a) {
  std::sort(a.vertices.begin(), a.vertices.end());
  a.vertices.erase(std::unique(a.vertices.begin(), a.vertices.end()), a.vertices.end());
  if (!a.explicit_edges) {
    a.edges = induced_edges(g, a.vertices);
  } else {
    for (auto& e : a.edges) e = Graph::pair_key(e.first, e.second);
    std::sort(a.edges.begin(), a.edges.end());
    a.edges.erase(std::unique(a.edges.begin(), a.edges.end()), a.edges.end());
  }
}

inline bool area_connected(const Agent& a) {
  if (a.vertices.empty()) return false;
  std::map<int, std::vector<int>> adj;
  for (auto [u, v] : a.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::set<int> seen{a.vertices.front()};
  std::vector<int> stack{a.vertices.front()};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return seen.size() == a.vertices.size();
}

inline void validate_instance(const Instance& inst) {
  const Graph& g = inst.graph;
  if (g.size() == 0) throw ValidationError("instance has no vertices");
  if (inst.source < 0 || inst.source >= g.size()) throw ValidationError("unknown source vertex");
  if (inst.target < 0 || inst.target >= g.size()) throw ValidationError("unknown target vertex");
  std::set<std::string> ids;
  for (const Agent& a : inst.agents) {
    if (!ids.insert(a.id).second) throw ValidationError("duplicate agent id '" + a.id + "'");
    if (a.speed.sign() <= 0) throw ValidationError("non-positive speed for agent '" + a.id + "'");
    if (a.vertices.empty()) throw ValidationError("agent '" + a.id + "' has an empty area");
    for (int v : a.vertices) {
      if (v < 0 || v >= g.size()) throw ValidationError("agent '" + a.id + "' references an unknown vertex");
    }
    for (auto [u, v] : a.edges) {
      if (!a.covers(u) || !a.covers(v)) {
        throw ValidationError("agent '" + a.id + "' edge leaves its vertex set");
      }
      if (!g.pair_length(u, v)) {
        throw ValidationError("agent '" + a.id + "' uses non-edge {" + g.name(u) + "," + g.name(v) + "}");
      }
    }
    if (!area_connected(a)) throw ValidationError("disconnected movement area for agent '" + a.id + "'");
    if (a.start && !a.covers(*a.start)) {
      throw ValidationError("start of agent '" + a.id + "' lies outside its area");
    }
  }
}

// B_u for every vertex, as sorted agent indices.
inline std::vector<std::vector<int>> cover_sets(const Instance& inst) {
  std::vector<std::vector<int>> out(inst.n());
  for (int a = 0; a < inst.k(); ++a) {
    for (int v : inst.agents[a].vertices) out[v].push_back(a);
  }
  return out;
}

inline std::set<std::string> covering_agents(const Instance& inst, const std::string& vertex) {
  int v = inst.graph.at(vertex);
  std::set<std::string> out;
  for (const Agent& a : inst.agents) {
    if (a.covers(v)) out.insert(a.id);
  }
  return out;
}

inline int thickness(const Instance& inst) {
  int best = 0;
  for (const auto& b : cover_sets(inst)) best = std::max(best, static_cast<int>(b.size()));
  return best;
}

// Scales every agent speed or every edge length by a positive factor.
inline Instance scale_speeds(const Instance& inst, const Rational& factor) {
  Instance out = inst;
  for (Agent& a : out.agents) a.speed *= factor;
  return out;
}

inline Instance scale_lengths(const Instance& inst, const Rational& factor) {
  Instance out;
  for (const auto& name : inst.graph.names()) out.graph.add_vertex(name);
  for (const Edge& e : inst.graph.edges()) out.graph.add_edge(e.u, e.v, e.len * factor);
  out.source = inst.source;
  out.target = inst.target;
  out.agents = inst.agents;
  return out;
}

}  // namespace ddt
