#pragma once

#include <optional>
#include <vector>

#include "distances.hpp"
#include "schedule.hpp"

namespace ddt {

// Layer 0 is {s}, layer i (1..b-1) is V_{a_i} ∩ V_{a_{i+1}}, layer b is {t}.
// The arc from layer i-1 to layer i is travelled by order[i-1].
struct LayeredGraph {
  std::vector<int> order;
  std::vector<std::vector<int>> layers;

  [[nodiscard]] int node_count() const {
    int c = 0;
    for (const auto& l : layers) c += static_cast<int>(l.size());
    return c;
  }
};

inline LayeredGraph build_layered_graph(const Instance& inst, const std::vector<int>& order) {
  if (order.empty()) throw Error("agent order is empty");
  for (int a : order) {
    if (a < 0 || a >= inst.k()) throw Error("agent order names an unknown agent");
  }
  LayeredGraph lg;
  lg.order = order;
  lg.layers.push_back({inst.source});
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    std::vector<int> layer;
    const Agent& a = inst.agents[order[i]];
    const Agent& b = inst.agents[order[i + 1]];
    std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                          std::back_inserter(layer));
    lg.layers.push_back(layer);
  }
  lg.layers.push_back({inst.target});
  return lg;
}

struct FixedOrderResult {
  Time time = Time::infinity();
  std::vector<int> handovers;  // one vertex per internal layer
  std::optional<Schedule> schedule;
};

// Forward sweep over the layered DAG; ties keep the smaller predecessor vertex.
inline FixedOrderResult solve_fixed_order(const Instance& inst, const std::vector<int>& order,
                                          const AgentDistances& dist, bool want_schedule = true) {
  LayeredGraph lg = build_layered_graph(inst, order);
  FixedOrderResult res;
  if (inst.source == inst.target) {
    res.time = Time(Rational(0));
    if (want_schedule) res.schedule = Schedule::empty(inst);
    return res;
  }
  const int L = static_cast<int>(lg.layers.size());
  std::vector<std::vector<Time>> best(L);
  std::vector<std::vector<int>> from(L);
  best[0] = {Time(Rational(0))};
  from[0] = {-1};
  for (int i = 1; i < L; ++i) {
    const auto& prev = lg.layers[i - 1];
    const auto& cur = lg.layers[i];
    best[i].assign(cur.size(), Time::infinity());
    from[i].assign(cur.size(), -1);
    int a = order[i - 1];
    for (std::size_t q = 0; q < cur.size(); ++q) {
      for (std::size_t p = 0; p < prev.size(); ++p) {
        if (best[i - 1][p].is_infinite()) continue;
        Time c = best[i - 1][p] + dist.time(a, prev[p], cur[q]);
        if (c < best[i][q]) {
          best[i][q] = c;
          from[i][q] = static_cast<int>(p);
        }
      }
    }
  }
  res.time = best[L - 1][0];
  if (res.time.is_infinite()) return res;
  std::vector<int> picked(L, 0);
  for (int i = L - 1; i > 0; --i) picked[i - 1] = from[i][picked[i]];
  std::vector<Leg> legs;
  for (int i = 1; i < L; ++i) {
    if (i < L - 1) res.handovers.push_back(lg.layers[i][picked[i]]);
    legs.push_back({order[i - 1], lg.layers[i - 1][picked[i - 1]], lg.layers[i][picked[i]]});
  }
  if (want_schedule) res.schedule = build_schedule(inst, dist, legs);
  return res;
}

inline FixedOrderResult solve_fixed_order(const Instance& inst, const std::vector<int>& order) {
  AgentDistances dist(inst);
  return solve_fixed_order(inst, order, dist);
}

}  // namespace ddt
