#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "distances.hpp"
#include "model.hpp"

namespace ddt {

struct AgentTrip {
  int u = 0;
  int v = 0;
  Rational tau;
  friend bool operator==(const AgentTrip&, const AgentTrip&) = default;
};

struct PackageTrip {
  int u = 0;
  int v = 0;
  int agent = 0;
  Rational tau;
  friend bool operator==(const PackageTrip&, const PackageTrip&) = default;
};

struct Schedule {
  std::vector<std::optional<int>> start_positions;  // per agent
  std::vector<std::vector<AgentTrip>> agent_trips;  // per agent
  std::vector<PackageTrip> package_trips;

  static Schedule empty(const Instance& inst) {
    Schedule s;
    s.start_positions.assign(inst.k(), std::nullopt);
    s.agent_trips.assign(inst.k(), {});
    return s;
  }
};

enum class Mode { sp, fp };

struct Violation {
  std::string rule;
  std::string detail;
};

class ScheduleError : public Error {
 public:
  explicit ScheduleError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}
  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string out;
    for (const auto& v : vs) {
      if (!out.empty()) out += "; ";
      out += v.rule + ": " + v.detail;
    }
    return out;
  }
  std::vector<Violation> violations_;
};

struct ScheduleCheck {
  Rational delivery_time;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string describe(const Instance& inst, const PackageTrip& p) {
  return "(" + inst.graph.name(p.u) + "," + inst.graph.name(p.v) + "," + inst.agents[p.agent].id + "," +
         p.tau.str() + ")";
}

inline std::string describe(const Instance& inst, int agent, const AgentTrip& t) {
  return inst.agents[agent].id + ":(" + inst.graph.name(t.u) + "," + inst.graph.name(t.v) + "," + t.tau.str() + ")";
}

}  // namespace detail

// Checks every feasibility rule and returns the delivery time; throws ScheduleError listing all violations.
inline ScheduleCheck validate_schedule(const Instance& inst, const Schedule& sched, Mode mode = Mode::sp) {
  std::vector<Violation> errs;
  ScheduleCheck out;
  const Graph& g = inst.graph;
  const int k = inst.k();
  auto fail = [&](std::string rule, std::string detail) { errs.push_back({std::move(rule), std::move(detail)}); };

  if (static_cast<int>(sched.agent_trips.size()) != k || static_cast<int>(sched.start_positions.size()) != k) {
    throw ScheduleError(std::vector<Violation>{{"shape", "schedule does not list every agent"}});
  }

  auto travel = [&](int a, int u, int v) -> std::optional<Rational> {
    auto len = g.pair_length(u, v);
    if (!len) return std::nullopt;
    return *len / inst.agents[a].speed;
  };

  for (int a = 0; a < k; ++a) {
    const Agent& ag = inst.agents[a];
    const auto& trips = sched.agent_trips[a];
    const auto& sp = sched.start_positions[a];
    if (sp && !ag.covers(*sp)) fail("start position", ag.id + " starts outside its area at " + g.name(*sp));
    if (!trips.empty()) {
      if (mode == Mode::fp) {
        if (!ag.start) {
          fail("fixed start", ag.id + " has no fixed start position");
        } else if (trips.front().u != *ag.start) {
          fail("fixed start", ag.id + " does not depart from " + g.name(*ag.start));
        }
      } else if (sp && *sp != trips.front().u) {
        fail("start position", ag.id + " first trip does not leave its start position");
      }
    } else if (mode == Mode::fp && sp && ag.start && *sp != *ag.start) {
      fail("fixed start", ag.id + " is placed away from its fixed start");
    }
    for (std::size_t i = 0; i < trips.size(); ++i) {
      const AgentTrip& t = trips[i];
      if (!ag.has_edge(t.u, t.v)) fail("edge membership", detail::describe(inst, a, t) + " uses an edge outside E_a");
      if (t.tau.sign() < 0) fail("timing", detail::describe(inst, a, t) + " departs before time 0");
      if (i + 1 < trips.size()) {
        const AgentTrip& nx = trips[i + 1];
        if (nx.u != t.v) fail("chaining", detail::describe(inst, a, nx) + " does not continue from " + g.name(t.v));
        auto dt = travel(a, t.u, t.v);
        if (dt && t.tau + *dt > nx.tau) {
          fail("timing", detail::describe(inst, a, nx) + " departs before " + detail::describe(inst, a, t) +
                             " arrives");
        }
      }
    }
  }

  const auto& pk = sched.package_trips;
  if (pk.empty()) {
    if (inst.source == inst.target) {
      if (errs.empty()) {
        out.delivery_time = Rational(0);
        return out;
      }
    } else {
      fail("package path", "package path empty");
    }
    throw ScheduleError(std::move(errs));
  }

  for (const PackageTrip& p : pk) {
    if (p.agent < 0 || p.agent >= k) throw ScheduleError(std::vector<Violation>{{"package", "package trip names an unknown agent"}});
  }
  if (pk.front().u != inst.source) fail("endpoints", "package does not leave from the source");
  if (pk.back().v != inst.target) fail("endpoints", "package does not end at the target");

  // Position in the carrier's trip list of each package tuple.
  std::vector<int> slot(pk.size(), -1);
  for (std::size_t i = 0; i < pk.size(); ++i) {
    const PackageTrip& p = pk[i];
    const auto& trips = sched.agent_trips[p.agent];
    for (std::size_t j = 0; j < trips.size(); ++j) {
      if (trips[j].u == p.u && trips[j].v == p.v && trips[j].tau == p.tau) {
        slot[i] = static_cast<int>(j);
        break;
      }
    }
    if (slot[i] < 0) fail("mirroring", detail::describe(inst, p) + " has no matching agent trip");
  }

  auto arrival = [&](const PackageTrip& p) -> Rational {
    auto dt = travel(p.agent, p.u, p.v);
    return p.tau + (dt ? *dt : Rational(0));
  };

  for (std::size_t i = 0; i + 1 < pk.size(); ++i) {
    const PackageTrip& p = pk[i];
    const PackageTrip& q = pk[i + 1];
    if (q.u != p.v) {
      fail("chaining", detail::describe(inst, q) + " does not continue from " + g.name(p.v));
      continue;
    }
    Rational arr = arrival(p);
    if (arr > q.tau) {
      fail("timing", detail::describe(inst, q) + " departs before " + detail::describe(inst, p) + " arrives");
      continue;
    }
    if (p.agent == q.agent || slot[i] < 0 || slot[i + 1] < 0) continue;
    // Handover: both agents must be at p.v at some common moment in [arr, q.tau].
    const auto& ta = sched.agent_trips[p.agent];
    Time a_leaves = static_cast<std::size_t>(slot[i] + 1) < ta.size() ? Time(ta[slot[i] + 1].tau) : Time::infinity();
    const auto& tb = sched.agent_trips[q.agent];
    Rational b_arrives(0);
    if (slot[i + 1] > 0) {
      const AgentTrip& prev = tb[slot[i + 1] - 1];
      auto dt = travel(q.agent, prev.u, prev.v);
      b_arrives = prev.tau + (dt ? *dt : Rational(0));
    }
    Rational lo = std::max(arr, b_arrives);
    Time hi = min(Time(q.tau), a_leaves);
    if (Time(lo) > hi) {
      fail("handover", inst.agents[p.agent].id + " and " + inst.agents[q.agent].id + " never meet at " +
                           g.name(p.v) + " between " + detail::describe(inst, p) + " and " +
                           detail::describe(inst, q));
    }
  }

  for (int a = 0; a < k; ++a) {
    for (const AgentTrip& t : sched.agent_trips[a]) {
      bool carried = false;
      for (const PackageTrip& p : pk) {
        if (p.agent == a && p.u == t.u && p.v == t.v && p.tau == t.tau) {
          carried = true;
          break;
        }
      }
      if (!carried) out.warnings.push_back(detail::describe(inst, a, t) + " moves without the package");
    }
  }

  if (!errs.empty()) throw ScheduleError(std::move(errs));
  out.delivery_time = arrival(pk.back());
  return out;
}

// One carrier's share of the delivery: move the package from `from` to `to`.
struct Leg {
  int agent = 0;
  int from = 0;
  int to = 0;
};

// Materializes carrier legs as a schedule in which each leg starts the moment the package arrives.
inline Schedule build_schedule(const Instance& inst, const AgentDistances& dist, const std::vector<Leg>& legs) {
  Schedule s = Schedule::empty(inst);
  Rational now(0);
  for (const Leg& leg : legs) {
    if (leg.from == leg.to) continue;
    auto verts = dist.path(leg.agent, leg.from, leg.to);
    const Agent& ag = inst.agents[leg.agent];
    if (!s.start_positions[leg.agent]) s.start_positions[leg.agent] = leg.from;
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      int u = verts[i];
      int v = verts[i + 1];
      s.agent_trips[leg.agent].push_back({u, v, now});
      s.package_trips.push_back({u, v, leg.agent, now});
      now += *inst.graph.pair_length(u, v) / ag.speed;
    }
  }
  return s;
}

}  // namespace ddt
