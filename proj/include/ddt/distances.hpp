#pragma once

#include <queue>
#include <vector>

#include "model.hpp"

namespace ddt {

// All-pairs travel times d_a(u,v) inside each agent's own area, with predecessors for path recovery.
class AgentDistances {
 public:
  AgentDistances() = default;
  explicit AgentDistances(const Instance& inst) : n_(inst.n()) {
    tables_.reserve(inst.agents.size());
    for (const Agent& a : inst.agents) tables_.push_back(build(inst.graph, a));
  }

  // Time for agent a to travel from u to v; infinite when either vertex is outside V_a.
  [[nodiscard]] Time time(int a, int u, int v) const {
    const Table& t = tables_.at(a);
    int iu = t.local[u];
    int iv = t.local[v];
    if (iu < 0 || iv < 0) return Time::infinity();
    if (iu == iv) return Time(Rational(0));
    const auto& len = t.length[iu][iv];
    if (len.is_infinite()) return len;
    return Time(len.value() / t.speed);
  }

  // Shortest-path length (not time) inside G_a.
  [[nodiscard]] Time length(int a, int u, int v) const {
    const Table& t = tables_.at(a);
    int iu = t.local[u];
    int iv = t.local[v];
    if (iu < 0 || iv < 0) return Time::infinity();
    return t.length[iu][iv];
  }

  // Vertex sequence u..v of a shortest path in G_a (ties broken toward smaller vertex ids).
  [[nodiscard]] std::vector<int> path(int a, int u, int v) const {
    const Table& t = tables_.at(a);
    int iu = t.local[u];
    int iv = t.local[v];
    if (iu < 0 || iv < 0 || t.length[iu][iv].is_infinite()) throw Error("no path inside agent area");
    std::vector<int> rev{v};
    int cur = iv;
    while (cur != iu) {
      cur = t.pred[iu][cur];
      rev.push_back(t.vertices[cur]);
    }
    return {rev.rbegin(), rev.rend()};
  }

  [[nodiscard]] int agents() const { return static_cast<int>(tables_.size()); }

 private:
  struct Table {
    Rational speed;
    std::vector<int> vertices;
    std::vector<int> local;
    std::vector<std::vector<Time>> length;
    std::vector<std::vector<int>> pred;
  };

  Table build(const Graph& g, const Agent& a) const {
    Table t;
    t.speed = a.speed;
    t.vertices = a.vertices;
    t.local.assign(n_, -1);
    int m = static_cast<int>(a.vertices.size());
    for (int i = 0; i < m; ++i) t.local[a.vertices[i]] = i;
    std::vector<std::vector<std::pair<int, Rational>>> adj(m);
    for (auto [u, v] : a.edges) {
      Rational len = *g.pair_length(u, v);
      adj[t.local[u]].push_back({t.local[v], len});
      adj[t.local[v]].push_back({t.local[u], len});
    }
    for (auto& row : adj) std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    t.length.assign(m, std::vector<Time>(m, Time::infinity()));
    t.pred.assign(m, std::vector<int>(m, -1));
    for (int src = 0; src < m; ++src) {
      auto& dist = t.length[src];
      auto& pred = t.pred[src];
      std::vector<bool> done(m, false);
      using Item = std::pair<Rational, int>;
      auto cmp = [](const Item& x, const Item& y) { return y < x; };
      std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
      dist[src] = Time(Rational(0));
      pq.push({Rational(0), src});
      while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (done[x]) continue;
        done[x] = true;
        for (const auto& [y, len] : adj[x]) {
          Time cand(d + len);
          if (cand < dist[y] || (cand == dist[y] && !done[y] && pred[y] > x)) {
            bool improved = cand < dist[y];
            dist[y] = cand;
            pred[y] = x;
            if (improved) pq.push({cand.value(), y});
          }
        }
      }
    }
    return t;
  }

  int n_ = 0;
  std::vector<Table> tables_;
};

}  // namespace ddt
