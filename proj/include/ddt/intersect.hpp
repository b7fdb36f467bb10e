#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "model.hpp"
#include "schedule.hpp"

namespace ddt {

struct SharedEdge {
  int a = 0;
  int b = 0;  // a < b
  int vertex = 0;
};

class IntersectionGraph {
 public:
  IntersectionGraph() = default;
  explicit IntersectionGraph(const Instance& inst) : k_(inst.k()) {
    shared_.assign(static_cast<std::size_t>(k_) * k_, {});
    neighbors_.assign(k_, {});
    degree_.assign(k_, 0);
    auto cover = cover_sets(inst);
    for (int x = 0; x < inst.n(); ++x) {
      const auto& b = cover[x];
      for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i + 1; j < b.size(); ++j) {
          edges_.push_back({b[i], b[j], x});
          shared_[idx(b[i], b[j])].push_back(x);
          shared_[idx(b[j], b[i])].push_back(x);
          ++degree_[b[i]];
          ++degree_[b[j]];
        }
      }
    }
    std::sort(edges_.begin(), edges_.end(), [](const SharedEdge& x, const SharedEdge& y) {
      return std::tie(x.a, x.b, x.vertex) < std::tie(y.a, y.b, y.vertex);
    });
    simple_ = true;
    for (int a = 0; a < k_; ++a) {
      for (int b = 0; b < k_; ++b) {
        const auto& s = shared_[idx(a, b)];
        if (a != b && !s.empty()) neighbors_[a].push_back(b);
        if (s.size() > 1) simple_ = false;
      }
    }
  }

  [[nodiscard]] int size() const { return k_; }
  [[nodiscard]] bool simple() const { return simple_; }
  [[nodiscard]] const std::vector<SharedEdge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<int>& neighbors(int a) const { return neighbors_.at(a); }
  [[nodiscard]] const std::vector<int>& shared(int a, int b) const { return shared_.at(idx(a, b)); }
  [[nodiscard]] int multiplicity(int a, int b) const { return static_cast<int>(shared(a, b).size()); }
  // Incident edge endpoints, parallel edges counted.
  [[nodiscard]] int degree(int a) const { return degree_.at(a); }
  [[nodiscard]] int max_degree() const {
    int best = 0;
    for (int d : degree_) best = std::max(best, d);
    return best;
  }
  // Edges of the underlying simple graph as (a, b) with a < b.
  [[nodiscard]] std::vector<std::pair<int, int>> simple_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < k_; ++a) {
      for (int b : neighbors_[a]) {
        if (a < b) out.emplace_back(a, b);
      }
    }
    return out;
  }

 private:
  [[nodiscard]] std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * k_ + b; }

  int k_ = 0;
  bool simple_ = true;
  std::vector<SharedEdge> edges_;
  std::vector<std::vector<int>> shared_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> degree_;
};

inline IntersectionGraph build_intersection_graph(const Instance& inst) { return IntersectionGraph(inst); }

inline std::optional<int> intersection_point(const IntersectionGraph& ig, int a, int b) {
  if (!ig.simple()) throw Error("intersection point requested on a non-simple intersection graph");
  const auto& s = ig.shared(a, b);
  if (s.empty()) return std::nullopt;
  return s.front();
}

inline std::string intersection_dot(const Instance& inst, const IntersectionGraph& ig) {
  std::ostringstream out;
  out << "graph intersection {\n";
  for (const Agent& a : inst.agents) out << "  \"" << a.id << "\";\n";
  for (const SharedEdge& e : ig.edges()) {
    out << "  \"" << inst.agents[e.a].id << "\" -- \"" << inst.agents[e.b].id << "\" [label=\""
        << inst.graph.name(e.vertex) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

struct TransformMap {
  std::vector<std::vector<int>> copies;     // original vertex -> new vertices
  std::vector<int> vertex_origin;           // new vertex -> original vertex
  std::vector<int> vertex_owner;            // new vertex -> original agent (-1 for an uncovered vertex)
  std::vector<int> agent_image;             // original agent -> new agent
  std::vector<int> agent_origin;            // new agent -> original agent (-1 for helpers)
  std::vector<int> helper_vertex;           // new agent -> original vertex it joins (-1 otherwise)
};

struct Simplified {
  Instance instance;
  TransformMap map;
};

// Splits every vertex into one copy per covering agent and rejoins the copies with zero-length
// connectors travelled by a dedicated helper, so any two agents share at most one vertex.
inline Simplified simplify_intersections(const Instance& inst) {
  Simplified out;
  Instance& ni = out.instance;
  TransformMap& m = out.map;
  const Graph& g = inst.graph;
  auto cover = cover_sets(inst);
  m.copies.assign(inst.n(), {});
  std::vector<std::map<int, int>> copy_of(inst.n());  // original vertex -> (agent -> copy)

  for (int u = 0; u < inst.n(); ++u) {
    if (cover[u].empty()) {
      int c = ni.graph.add_vertex(g.name(u));
      m.copies[u].push_back(c);
      m.vertex_origin.push_back(u);
      m.vertex_owner.push_back(-1);
      continue;
    }
    for (int a : cover[u]) {
      int c = ni.graph.add_vertex(g.name(u) + "@" + inst.agents[a].id);
      m.copies[u].push_back(c);
      m.vertex_origin.push_back(u);
      m.vertex_owner.push_back(a);
      copy_of[u][a] = c;
    }
  }
  for (int a = 0; a < inst.k(); ++a) {
    for (auto [u, v] : inst.agents[a].edges) ni.graph.add_edge(copy_of[u][a], copy_of[v][a], *g.pair_length(u, v));
  }
  for (int u = 0; u < inst.n(); ++u) {
    const auto& cs = m.copies[u];
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) ni.graph.add_edge(cs[i], cs[j], Rational(0));
    }
  }

  std::set<std::string> ids;
  for (const Agent& a : inst.agents) ids.insert(a.id);
  for (int a = 0; a < inst.k(); ++a) {
    const Agent& src = inst.agents[a];
    Agent na;
    na.id = src.id;
    na.speed = src.speed;
    na.explicit_edges = true;
    for (int u : src.vertices) na.vertices.push_back(copy_of[u][a]);
    for (auto [u, v] : src.edges) na.edges.emplace_back(copy_of[u][a], copy_of[v][a]);
    if (src.start) na.start = copy_of[*src.start][a];
    normalize_agent(ni.graph, na);
    m.agent_image.push_back(static_cast<int>(ni.agents.size()));
    m.agent_origin.push_back(a);
    m.helper_vertex.push_back(-1);
    ni.agents.push_back(std::move(na));
  }
  for (int u = 0; u < inst.n(); ++u) {
    if (cover[u].size() < 2) continue;
    Agent h;
    h.id = "h_" + g.name(u);
    while (ids.count(h.id)) h.id += "'";
    ids.insert(h.id);
    h.speed = Rational(1);
    h.explicit_edges = true;
    h.vertices = m.copies[u];
    const auto& cs = m.copies[u];
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) h.edges.emplace_back(cs[i], cs[j]);
    }
    normalize_agent(ni.graph, h);
    m.agent_origin.push_back(-1);
    m.helper_vertex.push_back(u);
    ni.agents.push_back(std::move(h));
  }

  auto pick = [&](int u) {
    if (cover[u].empty()) return m.copies[u].front();
    int best = cover[u].front();
    for (int a : cover[u]) {
      if (inst.agents[a].id < inst.agents[best].id) best = a;
    }
    return copy_of[u][best];
  };
  ni.source = pick(inst.source);
  ni.target = pick(inst.target);
  return out;
}

// Projects a schedule of the simplified instance back onto the original one: helper moves vanish,
// copies collapse to their original vertex.
inline Schedule project_schedule(const Instance& original, const Simplified& simp, const Schedule& s) {
  const TransformMap& m = simp.map;
  Schedule out = Schedule::empty(original);
  for (std::size_t na = 0; na < s.agent_trips.size(); ++na) {
    int a = m.agent_origin[na];
    if (a < 0) continue;
    if (s.start_positions[na]) out.start_positions[a] = m.vertex_origin[*s.start_positions[na]];
    for (const AgentTrip& t : s.agent_trips[na]) {
      out.agent_trips[a].push_back({m.vertex_origin[t.u], m.vertex_origin[t.v], t.tau});
    }
  }
  for (const PackageTrip& p : s.package_trips) {
    int a = m.agent_origin[p.agent];
    if (a < 0) continue;
    out.package_trips.push_back({m.vertex_origin[p.u], m.vertex_origin[p.v], a, p.tau});
  }
  return out;
}

}  // namespace ddt
