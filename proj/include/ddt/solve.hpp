#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "path_solver.hpp"
#include "tree_solver.hpp"
#include "tw_solver.hpp"

namespace ddt {

enum class Algo { auto_pick, path, tree, tw, order, oracle };

inline Algo parse_algo(const std::string& s) {
  if (s == "auto") return Algo::auto_pick;
  if (s == "path") return Algo::path;
  if (s == "tree") return Algo::tree;
  if (s == "tw") return Algo::tw;
  if (s == "order") return Algo::order;
  if (s == "oracle") return Algo::oracle;
  throw Error("unknown algorithm '" + s + "'");
}

inline std::string algo_name(Algo a) {
  switch (a) {
    case Algo::auto_pick: return "auto";
    case Algo::path: return "path";
    case Algo::tree: return "tree";
    case Algo::tw: return "tw";
    case Algo::order: return "order";
    case Algo::oracle: return "oracle";
  }
  return "?";
}

struct SolveOptions {
  std::vector<std::string> order;  // agent ids, for Algo::order
  std::optional<int> max_len;
  Heuristic heuristic = Heuristic::min_fill;
};

struct SolveReport {
  Algo algo = Algo::auto_pick;
  Time time = Time::infinity();
  std::vector<int> sequence;
  std::optional<Schedule> schedule;
  long long states = 0;
  std::vector<int> node_states;
};

inline Algo pick_algorithm(const Instance& inst) {
  if (is_path_graph(inst.graph)) return Algo::path;
  if (inst.k() > 0 && check_tree_intersection(inst, IntersectionGraph(inst)).tree) return Algo::tree;
  return Algo::tw;
}

inline SolveReport solve(const Instance& inst, Algo algo, const SolveOptions& opt = {}) {
  SolveReport rep;
  rep.algo = algo == Algo::auto_pick ? pick_algorithm(inst) : algo;
  switch (rep.algo) {
    case Algo::path: {
      auto r = solve_path(inst);
      rep.time = r.time;
      rep.schedule = r.schedule;
      rep.states = r.states;
      for (int a : r.carriers) rep.sequence.push_back(a);
      break;
    }
    case Algo::tree: {
      auto r = solve_tree_intersection(inst);
      rep.time = r.time;
      rep.schedule = r.schedule;
      rep.sequence = r.sequence;
      break;
    }
    case Algo::tw: {
      auto r = solve_treewidth(inst, {opt.heuristic});
      rep.time = r.time;
      rep.schedule = r.schedule;
      rep.sequence = r.sequence;
      rep.states = r.stats.states;
      rep.node_states = r.stats.node_states;
      break;
    }
    case Algo::order: {
      if (opt.order.empty()) throw Error("order solver needs --order");
      std::vector<int> order;
      for (const auto& id : opt.order) order.push_back(inst.agent_index(id));
      auto r = solve_fixed_order(inst, order);
      rep.time = r.time;
      rep.schedule = r.schedule;
      rep.sequence = order;
      break;
    }
    case Algo::oracle: {
      auto r = brute_force_opt(inst, opt.max_len);
      rep.time = r.time;
      rep.schedule = r.schedule;
      rep.sequence = r.sequence;
      rep.states = r.sequences;
      break;
    }
    case Algo::auto_pick: break;
  }
  if (rep.time.is_infinite()) rep.schedule.reset();
  return rep;
}

}  // namespace ddt
