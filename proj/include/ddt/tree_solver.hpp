#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intersect.hpp"
#include "order_solver.hpp"

namespace ddt {

class NotATreeError : public Error {
 public:
  explicit NotATreeError(const std::string& why) : Error("intersection graph is not a tree: " + why) {}
};

struct TreeCheck {
  bool tree = false;
  std::string reason;
  std::vector<int> clique;  // three agents sharing one vertex, when that is what breaks it
};

inline TreeCheck check_tree_intersection(const Instance& inst, const IntersectionGraph& ig) {
  TreeCheck c;
  const int k = inst.k();
  auto cover = cover_sets(inst);
  for (int u = 0; u < inst.n(); ++u) {
    if (cover[u].size() >= 3) {
      c.reason = "vertex " + inst.graph.name(u) + " is covered by three agents";
      c.clique = {cover[u][0], cover[u][1], cover[u][2]};
      return c;
    }
  }
  if (k == 0) {
    c.reason = "no agents";
    return c;
  }
  if (static_cast<int>(ig.simple_edges().size()) != k - 1) {
    c.reason = "edge count differs from agent count minus one";
    return c;
  }
  std::vector<bool> seen(k, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    ++count;
    for (int b : ig.neighbors(a)) {
      if (!seen[b]) {
        seen[b] = true;
        stack.push_back(b);
      }
    }
  }
  if (count != k) {
    c.reason = "disconnected";
    return c;
  }
  c.tree = true;
  return c;
}

struct TreeResult {
  Time time = Time::infinity();
  std::vector<int> sequence;
  std::optional<Schedule> schedule;
  int invocations = 0;
};

inline std::vector<int> tree_path(const IntersectionGraph& ig, int from, int to) {
  std::vector<int> parent(ig.size(), -2);
  std::vector<int> queue{from};
  parent[from] = -1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int a = queue[i];
    for (int b : ig.neighbors(a)) {
      if (parent[b] == -2) {
        parent[b] = a;
        queue.push_back(b);
      }
    }
  }
  std::vector<int> rev;
  for (int x = to; x != -1; x = parent[x]) rev.push_back(x);
  return {rev.rbegin(), rev.rend()};
}

inline TreeResult solve_tree_intersection(const Instance& inst) {
  IntersectionGraph ig(inst);
  TreeCheck check = check_tree_intersection(inst, ig);
  if (!check.tree) throw NotATreeError(check.reason);
  TreeResult res;
  if (inst.source == inst.target) {
    res.time = Time(Rational(0));
    res.schedule = Schedule::empty(inst);
    return res;
  }
  AgentDistances dist(inst);
  auto cover = cover_sets(inst);
  for (int first : cover[inst.source]) {
    for (int last : cover[inst.target]) {
      auto order = tree_path(ig, first, last);
      ++res.invocations;
      auto r = solve_fixed_order(inst, order, dist);
      if (r.time < res.time) {
        res.time = r.time;
        res.sequence = order;
        res.schedule = r.schedule;
      }
    }
  }
  return res;
}

}  // namespace ddt
