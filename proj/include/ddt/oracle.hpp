#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "intersect.hpp"
#include "order_solver.hpp"

namespace ddt {

// Calls `visit` for every simple path of the simple intersection graph that starts in B_s, ends in B_t
// and has at most max_len agents. Order: start agent ascending, then depth-first with ascending neighbors.
inline void enumerate_sequences(const Instance& inst, int max_len,
                                const std::function<void(const std::vector<int>&)>& visit) {
  IntersectionGraph ig(inst);
  const int k = inst.k();
  std::vector<bool> used(k, false);
  std::vector<int> seq;
  std::function<void(int)> grow = [&](int a) {
    used[a] = true;
    seq.push_back(a);
    if (inst.agents[a].covers(inst.target)) visit(seq);
    if (static_cast<int>(seq.size()) < max_len) {
      for (int b : ig.neighbors(a)) {
        if (!used[b]) grow(b);
      }
    }
    seq.pop_back();
    used[a] = false;
  };
  if (max_len < 1) return;
  for (int a = 0; a < k; ++a) {
    if (inst.agents[a].covers(inst.source)) grow(a);
  }
}

inline std::vector<std::vector<int>> list_sequences(const Instance& inst, int max_len) {
  std::vector<std::vector<int>> out;
  enumerate_sequences(inst, max_len, [&](const std::vector<int>& s) { out.push_back(s); });
  return out;
}

struct OracleResult {
  Time time = Time::infinity();
  std::vector<int> sequence;
  std::optional<Schedule> schedule;
  long long sequences = 0;
};

inline OracleResult brute_force_opt(const Instance& inst, std::optional<int> max_len = std::nullopt) {
  OracleResult res;
  if (inst.source == inst.target) {
    res.time = Time(Rational(0));
    res.schedule = Schedule::empty(inst);
    return res;
  }
  AgentDistances dist(inst);
  enumerate_sequences(inst, max_len.value_or(inst.k()), [&](const std::vector<int>& seq) {
    ++res.sequences;
    auto r = solve_fixed_order(inst, seq, dist, false);
    if (r.time < res.time) {
      res.time = r.time;
      res.sequence = seq;
    }
  });
  if (res.time.is_finite()) res.schedule = solve_fixed_order(inst, res.sequence, dist).schedule;
  return res;
}

}  // namespace ddt
