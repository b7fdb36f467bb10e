#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ddt;
using testing_ddt::Interval;
using testing_ddt::load;
using testing_ddt::path_instance;

namespace {

std::vector<int> ids(const Instance& inst, std::initializer_list<const char*> names) {
  std::vector<int> out;
  for (const char* n : names) out.push_back(inst.agent_index(n));
  return out;
}

}  // namespace

TEST(FixedOrder, FigureOne) {
  Instance inst = load("fig1.json");
  auto best = solve_fixed_order(inst, ids(inst, {"blue", "green", "red"}));
  EXPECT_EQ(best.time, Time(Rational(5)));
  EXPECT_EQ(best.handovers, (std::vector<int>{inst.graph.at("u1"), inst.graph.at("u4")}));
  EXPECT_EQ(solve_fixed_order(inst, ids(inst, {"blue", "red"})).time, Time(Rational(10)));
  EXPECT_TRUE(solve_fixed_order(inst, ids(inst, {"red", "blue"})).time.is_infinite());
  EXPECT_THROW(solve_fixed_order(inst, {}), Error);
  EXPECT_THROW(solve_fixed_order(inst, {9}), Error);
}

TEST(FixedOrder, LayersAreAreaIntersections) {
  Instance inst = load("fig1.json");
  LayeredGraph lg = build_layered_graph(inst, ids(inst, {"blue", "green", "red"}));
  const Graph& g = inst.graph;
  ASSERT_EQ(lg.layers.size(), 4u);
  EXPECT_EQ(lg.layers[0], std::vector<int>{g.at("s")});
  EXPECT_EQ(lg.layers[1], (std::vector<int>{g.at("u1"), g.at("u4")}));
  EXPECT_EQ(lg.layers[2], std::vector<int>{g.at("u4")});
  EXPECT_EQ(lg.layers[3], std::vector<int>{g.at("t")});
}

// For two agents the optimum is a minimum over the single handover vertex.
TEST(FixedOrder, PairsMatchDirectMinimum) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Instance inst = random_graph_instance(seed);
    AgentDistances dist(inst);
    for (int a = 0; a < inst.k(); ++a) {
      for (int b = 0; b < inst.k(); ++b) {
        if (a == b) continue;
        Time want = Time::infinity();
        for (int x = 0; x < inst.n(); ++x) {
          if (inst.agents[a].covers(x) && inst.agents[b].covers(x)) {
            want = min(want, dist.time(a, inst.source, x) + dist.time(b, x, inst.target));
          }
        }
        auto got = solve_fixed_order(inst, {a, b}, dist);
        ASSERT_EQ(got.time, want) << "seed " << seed;
        if (!got.time.is_infinite()) { EXPECT_EQ(Time(validate_schedule(inst, *got.schedule).delivery_time), want); }
      }
    }
  }
}

TEST(Oracle, FigureOneSequences) {
  Instance inst = load("fig1.json");
  auto all = list_sequences(inst, inst.k());
  std::vector<std::vector<int>> want = {ids(inst, {"blue"}), ids(inst, {"blue", "green", "red"}),
                                        ids(inst, {"blue", "purple", "green", "red"}), ids(inst, {"blue", "red"})};
  std::sort(all.begin(), all.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(all, want);
  EXPECT_EQ(list_sequences(inst, 2).size(), 2u);
  auto r = brute_force_opt(inst);
  EXPECT_EQ(r.time, Time(Rational(5)));
  EXPECT_EQ(r.sequence, ids(inst, {"blue", "green", "red"}));
  EXPECT_EQ(brute_force_opt(inst, 2).time, Time(Rational(10)));
}

TEST(PathSolver, HandComputedRelay) {
  // s=x0, t=x2, unit lengths; slow agent on [x0,x1], fast one on [x1,x2].
  Instance inst = path_instance({"1", "1"}, {{"slow", "1", 0, 1}, {"fast", "2", 1, 2}}, 0, 2);
  auto r = solve_path(inst);
  EXPECT_EQ(r.time, Time(Rational::parse("3/2")));
  EXPECT_EQ(validate_schedule(inst, *r.schedule).delivery_time, Rational::parse("3/2"));
  Instance wide = path_instance({"1", "1"}, {{"slow", "1", 0, 1}, {"fast", "2", 1, 2}, {"all", "1", 0, 2}}, 0, 2);
  EXPECT_EQ(solve_path(wide).time, Time(Rational::parse("3/2")));
}

TEST(PathSolver, FigureThreeMatchesOracle) {
  Instance inst = load("fig3.json");
  auto r = solve_path(inst);
  EXPECT_EQ(r.time, brute_force_opt(inst).time);
  EXPECT_EQ(r.time, Time(Rational::parse("14/3")));
  EXPECT_GT(r.states, 0);
}

TEST(PathSolver, ClipsToTheSourceTargetSpan) {
  // s at x5, t at x15; an agent spanning x0..x7 is clipped to x5..x7.
  std::vector<std::string> lengths(15, "1");
  Instance inst = path_instance(lengths, {{"wide", "1", 0, 7}, {"tail", "3", 7, 15}, {"outside", "9", 0, 3}}, 5, 15);
  CanonicalPath cp = canonicalize_path(inst);
  ASSERT_EQ(cp.seq.agents.size(), 4u);
  EXPECT_EQ(cp.seq.agents[0].left, cp.layout.pos[inst.graph.at("x5")]);
  EXPECT_EQ(cp.seq.agents[0].right, cp.layout.pos[inst.graph.at("x7")]);
  EXPECT_EQ(solve_path(inst).time, Time(Rational(2) + Rational(8) / Rational(3)));
}

TEST(PathSolver, HandlesOrientationAndEdgeCases) {
  Instance fwd = path_instance({"2", "3"}, {{"a", "1", 0, 1}, {"b", "2", 1, 2}}, 0, 2);
  Instance back = path_instance({"2", "3"}, {{"a", "1", 0, 1}, {"b", "2", 1, 2}}, 2, 0);
  EXPECT_EQ(solve_path(fwd).time, solve_path(back).time);
  EXPECT_EQ(solve_path(back).time, brute_force_opt(back).time);
  Instance gap = path_instance({"1", "1"}, {{"a", "1", 0, 0}, {"b", "1", 2, 2}}, 0, 2);
  EXPECT_TRUE(solve_path(gap).time.is_infinite());
  EXPECT_FALSE(solve_path(gap).schedule.has_value());
  Instance same = path_instance({"1"}, {{"a", "1", 0, 1}}, 1, 1);
  EXPECT_EQ(solve_path(same).time, Time(Rational(0)));
  Instance zero = path_instance({"0", "4", "0"}, {{"a", "1", 0, 2}, {"b", "4", 1, 3}}, 0, 3);
  EXPECT_EQ(solve_path(zero).time, Time(Rational(1)));
  EXPECT_THROW(solve_path(load("fig1.json")), NotAPathError);
}

TEST(TreeSolver, MatchesOracle) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    Instance inst = tree_intersection_instance(seed);
    auto r = solve_tree_intersection(inst);
    ASSERT_EQ(r.time, brute_force_opt(inst).time) << seed;
    EXPECT_LE(r.invocations, 4);
    for (const auto& b : cover_sets(inst)) EXPECT_LE(b.size(), 2u);
  }
}

TEST(TreeSolver, RejectsTripleCover) {
  Instance inst = load("fig1.json");
  TreeCheck c = check_tree_intersection(inst, IntersectionGraph(inst));
  EXPECT_FALSE(c.tree);
  EXPECT_EQ(c.clique.size(), 3u);
  EXPECT_THROW(solve_tree_intersection(inst), NotATreeError);
  // A 3-cycle of agents with no common vertex.
  Instance cyc = parse_instance(R"({"vertices": ["p", "q", "r"],
    "edges": [{"u": "p", "v": "q", "len": 1}, {"u": "q", "v": "r", "len": 1}, {"u": "r", "v": "p", "len": 1}],
    "source": "p", "target": "r",
    "agents": [{"id": "a", "speed": 1, "vertices": ["p", "q"]}, {"id": "b", "speed": 1, "vertices": ["q", "r"]},
               {"id": "c", "speed": 1, "vertices": ["r", "p"]}]})");
  EXPECT_FALSE(check_tree_intersection(cyc, IntersectionGraph(cyc)).tree);
}

TEST(TwSolver, FigureOneWithBothHeuristics) {
  Instance inst = load("fig1.json");
  for (Heuristic h : {Heuristic::min_fill, Heuristic::min_degree}) {
    auto r = solve_treewidth(inst, {h});
    EXPECT_EQ(r.time, Time(Rational(5)));
    EXPECT_EQ(r.sequence, ids(inst, {"blue", "green", "red"}));
    EXPECT_EQ(validate_schedule(inst, *r.schedule).delivery_time, Rational(5));
    EXPECT_GT(r.stats.states, 0);
    EXPECT_EQ(static_cast<int>(r.stats.node_states.size()), r.stats.nodes);
  }
}

TEST(TwSolver, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    Instance inst = random_graph_instance(seed);
    auto r = solve_treewidth(inst);
    ASSERT_EQ(r.time, brute_force_opt(inst).time) << seed;
  }
}

TEST(TwSolver, PathsAndInfeasibility) {
  Instance fig3 = load("fig3.json");
  EXPECT_EQ(solve_treewidth(fig3).time, Time(Rational::parse("14/3")));
  Instance gap = path_instance({"1", "1"}, {{"a", "1", 0, 0}, {"b", "1", 2, 2}}, 0, 2);
  EXPECT_TRUE(solve_treewidth(gap).time.is_infinite());
  Instance nobody = path_instance({"1", "1"}, {{"a", "1", 0, 1}}, 0, 2);
  EXPECT_TRUE(solve_treewidth(nobody).time.is_infinite());
}

TEST(Dispatch, AutoPicksByStructure) {
  EXPECT_EQ(pick_algorithm(load("fig1.json")), Algo::tw);
  EXPECT_EQ(pick_algorithm(load("fig3.json")), Algo::path);
  Instance tree = tree_intersection_instance(3);
  if (!is_path_graph(tree.graph)) { EXPECT_EQ(pick_algorithm(tree), Algo::tree); }
  EXPECT_THROW(parse_algo("fastest"), Error);
  SolveOptions opt;
  opt.order = {"blue", "red"};
  EXPECT_EQ(solve(load("fig1.json"), Algo::order, opt).time, Time(Rational(10)));
}
