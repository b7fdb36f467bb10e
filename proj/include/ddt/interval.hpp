#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "model.hpp"

namespace ddt {

class NotAPathError : public Error {
 public:
  NotAPathError() : Error("instance graph is not a path") {}
};

// Vertices laid out along the line, oriented so that s lies left of (or on) t.
struct PathLayout {
  std::vector<int> order;       // position -> vertex
  std::vector<int> pos;         // vertex -> position
  std::vector<Rational> coord;  // position -> cumulative coordinate
};

inline bool is_path_graph(const Graph& g) {
  const int n = g.size();
  if (n == 0) return false;
  if (static_cast<int>(g.pairs().size()) != n - 1) return false;
  std::vector<int> deg(n, 0);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [key, len] : g.pairs()) {
    (void)len;
    ++deg[key.first];
    ++deg[key.second];
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  for (int d : deg) {
    if (d > 2) return false;
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++count;
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

inline PathLayout path_layout(const Instance& inst) {
  const Graph& g = inst.graph;
  if (!is_path_graph(g)) throw NotAPathError();
  const int n = g.size();
  std::vector<std::vector<int>> adj(n);
  for (const auto& [key, len] : g.pairs()) {
    (void)len;
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  int first = 0;
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() <= 1) {
      first = v;
      break;
    }
  }
  PathLayout L;
  L.pos.assign(n, -1);
  int prev = -1;
  int cur = first;
  while (cur >= 0) {
    L.pos[cur] = static_cast<int>(L.order.size());
    L.order.push_back(cur);
    int next = -1;
    for (int y : adj[cur]) {
      if (y != prev) next = y;
    }
    prev = cur;
    cur = next;
  }
  if (L.pos[inst.target] < L.pos[inst.source]) {
    std::reverse(L.order.begin(), L.order.end());
    for (int i = 0; i < n; ++i) L.pos[L.order[i]] = i;
  }
  L.coord.assign(n, Rational(0));
  for (int i = 1; i < n; ++i) L.coord[i] = L.coord[i - 1] + *g.pair_length(L.order[i - 1], L.order[i]);
  return L;
}

struct IntervalAgent {
  int agent = -1;  // index in the instance; -1 for the artificial terminals
  std::string id;
  int left = 0;    // positions
  int right = 0;
  Rational speed{1};
};

struct Event {
  int agent = 0;  // index into EventSequence::agents
  bool start = true;
  int pos = 0;
  Rational coord;
};

struct EventSequence {
  std::vector<IntervalAgent> agents;
  std::vector<Event> events;
  std::vector<std::vector<int>> bags;  // agents covering the line right after each event
  int source_agent = -1;
  int target_agent = -1;

  [[nodiscard]] int max_bag() const {
    int best = 0;
    for (const auto& b : bags) best = std::max(best, static_cast<int>(b.size()));
    return best;
  }
  [[nodiscard]] int width() const { return max_bag() - 1; }
};

namespace detail {

inline void build_events(EventSequence& seq, const PathLayout& L) {
  auto rank = [&](int a) { return a == seq.source_agent ? 0 : (a == seq.target_agent ? 2 : 1); };
  for (int a = 0; a < static_cast<int>(seq.agents.size()); ++a) {
    const auto& ia = seq.agents[a];
    seq.events.push_back({a, true, ia.left, L.coord[ia.left]});
    seq.events.push_back({a, false, ia.right, L.coord[ia.right]});
  }
  std::sort(seq.events.begin(), seq.events.end(), [&](const Event& x, const Event& y) {
    return std::make_tuple(x.pos, !x.start, rank(x.agent), x.agent) <
           std::make_tuple(y.pos, !y.start, rank(y.agent), y.agent);
  });
  std::vector<int> bag;
  for (const Event& e : seq.events) {
    if (e.start) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), e.agent), e.agent);
    } else {
      bag.erase(std::lower_bound(bag.begin(), bag.end(), e.agent));
    }
    seq.bags.push_back(bag);
  }
}

inline IntervalAgent interval_of(const Instance& inst, const PathLayout& L, int a) {
  const Agent& ag = inst.agents[a];
  IntervalAgent ia;
  ia.agent = a;
  ia.id = ag.id;
  ia.speed = ag.speed;
  ia.left = L.pos[ag.vertices.front()];
  ia.right = ia.left;
  for (int v : ag.vertices) {
    ia.left = std::min(ia.left, L.pos[v]);
    ia.right = std::max(ia.right, L.pos[v]);
  }
  return ia;
}

}  // namespace detail

// Start and end events of the instance's own intervals, unclipped.
inline EventSequence path_event_sequence(const Instance& inst) {
  PathLayout L = path_layout(inst);
  EventSequence seq;
  for (int a = 0; a < inst.k(); ++a) seq.agents.push_back(detail::interval_of(inst, L, a));
  detail::build_events(seq, L);
  return seq;
}

// Agents covering the line after the last event at each distinct position.
inline std::vector<std::vector<int>> coordinate_bags(const EventSequence& seq) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < seq.events.size(); ++i) {
    if (i + 1 == seq.events.size() || seq.events[i + 1].pos != seq.events[i].pos) out.push_back(seq.bags[i]);
  }
  return out;
}

struct CanonicalPath {
  PathLayout layout;
  EventSequence seq;
};

// Clips intervals to [s, t], drops those that miss it, and adds zero-extent terminal agents at s and t.
inline CanonicalPath canonicalize_path(const Instance& inst) {
  CanonicalPath cp;
  cp.layout = path_layout(inst);
  const PathLayout& L = cp.layout;
  int ps = L.pos[inst.source];
  int pt = L.pos[inst.target];
  EventSequence& seq = cp.seq;
  for (int a = 0; a < inst.k(); ++a) {
    IntervalAgent ia = detail::interval_of(inst, L, a);
    ia.left = std::max(ia.left, ps);
    ia.right = std::min(ia.right, pt);
    if (ia.left > ia.right) continue;
    seq.agents.push_back(ia);
  }
  seq.source_agent = static_cast<int>(seq.agents.size());
  seq.agents.push_back({-1, "a_s", ps, ps, Rational(1)});
  seq.target_agent = static_cast<int>(seq.agents.size());
  seq.agents.push_back({-1, "a_t", pt, pt, Rational(1)});
  detail::build_events(seq, L);
  return cp;
}

}  // namespace ddt
