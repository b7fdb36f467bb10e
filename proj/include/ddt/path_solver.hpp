#pragma once

#include <map>
#include <optional>
#include <vector>

#include "distances.hpp"
#include "interval.hpp"
#include "schedule.hpp"

namespace ddt {

// D[e_i, S, a]: S is the set of agents used so far (all still in the bag), a ∈ S carries the package.
struct PathDpKey {
  std::vector<int> used;
  int carrier = -1;
  friend auto operator<=>(const PathDpKey&, const PathDpKey&) = default;
};

struct PathDpEntry {
  PathDpKey key;
  Time cost;
  int prev = -1;  // entry index after the previous event
};

using PathDpLayer = std::vector<PathDpEntry>;

struct PathResult {
  Time time = Time::infinity();
  std::optional<Schedule> schedule;
  std::vector<int> carriers;  // instance agent indices in carrying order
  long long states = 0;
  int max_states = 0;
};

namespace detail {

class PathLayerBuilder {
 public:
  void offer(PathDpKey key, Time cost, int prev) {
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, static_cast<int>(layer_.size()));
      layer_.push_back({std::move(key), std::move(cost), prev});
    } else if (cost < layer_[it->second].cost) {
      layer_[it->second].cost = std::move(cost);
      layer_[it->second].prev = prev;
    }
  }
  PathDpLayer take() { return std::move(layer_); }

 private:
  std::map<PathDpKey, int> index_;
  PathDpLayer layer_;
};

inline std::vector<int> with(std::vector<int> s, int x) {
  s.insert(std::lower_bound(s.begin(), s.end(), x), x);
  return s;
}

inline std::vector<int> without(std::vector<int> s, int x) {
  s.erase(std::lower_bound(s.begin(), s.end(), x));
  return s;
}

inline bool has(const std::vector<int>& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

}  // namespace detail

// Start event of agent x: every state keeps going with its carrier, or hands the package to x right here.
inline PathDpLayer dp_introduce_event(const EventSequence& seq, const PathDpLayer& prev, const Rational& gap, int x) {
  detail::PathLayerBuilder out;
  if (x == seq.source_agent) out.offer({{x}, x}, Time(Rational(0)), -1);
  for (int i = 0; i < static_cast<int>(prev.size()); ++i) {
    const PathDpEntry& e = prev[i];
    if (e.cost.is_infinite()) continue;
    Time moved = e.cost + Time(gap / seq.agents[e.key.carrier].speed);
    out.offer(e.key, moved, i);
    out.offer({detail::with(e.key.used, x), x}, moved, i);
  }
  return out.take();
}

// End event of agent x: x leaves the bag. If x carries, it hands over to an unused agent still present.
inline PathDpLayer dp_forget_event(const EventSequence& seq, const PathDpLayer& prev, const Rational& gap, int x,
                                   const std::vector<int>& bag_after) {
  detail::PathLayerBuilder out;
  for (int i = 0; i < static_cast<int>(prev.size()); ++i) {
    const PathDpEntry& e = prev[i];
    if (e.cost.is_infinite()) continue;
    Time moved = e.cost + Time(gap / seq.agents[e.key.carrier].speed);
    if (e.key.carrier != x) {
      auto used = detail::has(e.key.used, x) ? detail::without(e.key.used, x) : e.key.used;
      out.offer({std::move(used), e.key.carrier}, moved, i);
      continue;
    }
    auto rest = detail::without(e.key.used, x);
    for (int a : bag_after) {
      if (detail::has(rest, a)) continue;
      out.offer({detail::with(rest, a), a}, moved, i);
    }
  }
  return out.take();
}

inline PathResult solve_path(const Instance& inst) {
  CanonicalPath cp = canonicalize_path(inst);
  PathResult res;
  if (inst.source == inst.target) {
    res.time = Time(Rational(0));
    res.schedule = Schedule::empty(inst);
    return res;
  }
  const EventSequence& seq = cp.seq;
  const int m = static_cast<int>(seq.events.size());
  std::vector<PathDpLayer> layers;
  layers.reserve(m);
  PathDpLayer empty;
  // The terminal agent's own end event is never processed: the answer is read just before it.
  for (int i = 0; i + 1 < m; ++i) {
    const Event& ev = seq.events[i];
    Rational gap = i == 0 ? Rational(0) : ev.coord - seq.events[i - 1].coord;
    const PathDpLayer& prev = i == 0 ? empty : layers.back();
    PathDpLayer next = ev.start ? dp_introduce_event(seq, prev, gap, ev.agent)
                                : dp_forget_event(seq, prev, gap, ev.agent, seq.bags[i]);
    res.states += static_cast<long long>(next.size());
    res.max_states = std::max(res.max_states, static_cast<int>(next.size()));
    layers.push_back(std::move(next));
  }
  const PathDpLayer& last = layers.back();
  int best = -1;
  for (int i = 0; i < static_cast<int>(last.size()); ++i) {
    if (last[i].key.carrier != seq.target_agent) continue;
    if (best < 0 || last[i].cost < last[best].cost) best = i;
  }
  if (best < 0 || last[best].cost.is_infinite()) return res;
  res.time = last[best].cost;

  // Carrier after each processed event, then the positions where it changes.
  std::vector<int> carrier(layers.size());
  for (int i = static_cast<int>(layers.size()) - 1, at = best; i >= 0; --i) {
    carrier[i] = layers[i][at].key.carrier;
    at = layers[i][at].prev;
  }
  std::vector<Leg> legs;
  const PathLayout& L = cp.layout;
  int cur = carrier[0];
  int from = seq.events[0].pos;
  for (std::size_t i = 1; i < carrier.size(); ++i) {
    if (carrier[i] == cur) continue;
    int here = seq.events[i].pos;
    if (seq.agents[cur].agent >= 0) legs.push_back({seq.agents[cur].agent, L.order[from], L.order[here]});
    cur = carrier[i];
    from = here;
  }
  for (const Leg& l : legs) {
    if (l.from != l.to) res.carriers.push_back(l.agent);
  }
  AgentDistances dist(inst);
  res.schedule = build_schedule(inst, dist, legs);
  return res;
}

}  // namespace ddt
