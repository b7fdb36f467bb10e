#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ddt;
using testing_ddt::load;

TEST(Intersection, MultiplicityMatchesPairwiseRecount) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = random_graph_instance(seed);
    IntersectionGraph ig(inst);
    for (int a = 0; a < inst.k(); ++a) {
      int deg = 0;
      for (int b = 0; b < inst.k(); ++b) {
        if (a == b) continue;
        std::vector<int> common;
        const auto& va = inst.agents[a].vertices;
        const auto& vb = inst.agents[b].vertices;
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
        EXPECT_EQ(ig.shared(a, b), common);
        deg += static_cast<int>(common.size());
        bool adjacent = std::binary_search(ig.neighbors(a).begin(), ig.neighbors(a).end(), b);
        EXPECT_EQ(adjacent, !common.empty());
      }
      EXPECT_EQ(ig.degree(a), deg);
    }
  }
}

TEST(Intersection, FigureOne) {
  Instance inst = load("fig1.json");
  IntersectionGraph ig(inst);
  auto id = [&](const char* s) { return inst.agent_index(s); };
  EXPECT_EQ(ig.multiplicity(id("blue"), id("red")), 2);
  EXPECT_EQ(ig.multiplicity(id("blue"), id("green")), 2);
  EXPECT_EQ(ig.multiplicity(id("blue"), id("purple")), 1);
  EXPECT_EQ(ig.multiplicity(id("green"), id("purple")), 2);
  EXPECT_EQ(ig.multiplicity(id("red"), id("purple")), 0);
  EXPECT_FALSE(ig.simple());
  EXPECT_THROW(intersection_point(ig, 0, 1), Error);
  std::string dot = intersection_dot(inst, ig);
  EXPECT_EQ(dot.rfind("graph intersection {", 0), 0u);
  EXPECT_NE(dot.find("\"blue\" -- \"red\" [label=\"t\"]"), std::string::npos);
}

TEST(Intersection, BagsAreCliques) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = random_graph_instance(seed);
    IntersectionGraph ig(inst);
    for (const auto& b : cover_sets(inst)) {
      for (int x : b) {
        for (int y : b) {
          if (x != y) { EXPECT_GE(ig.multiplicity(x, y), 1); }
        }
      }
    }
  }
}

TEST(Simplify, ProducesSimpleGraphAndKeepsOptimum) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = random_graph_instance(seed);
    Simplified s = simplify_intersections(inst);
    const TransformMap& m = s.map;
    IntersectionGraph ig(s.instance);
    ASSERT_TRUE(ig.simple()) << seed;
    for (int a = 0; a < inst.k(); ++a) EXPECT_EQ(m.agent_origin[m.agent_image[a]], a);
    for (int na = 0; na < s.instance.k(); ++na) {
      if (m.agent_origin[na] >= 0) continue;
      const Agent& h = s.instance.agents[na];
      for (int v : h.vertices) EXPECT_EQ(m.vertex_origin[v], m.helper_vertex[na]);
      std::size_t c = h.vertices.size();
      EXPECT_EQ(h.edges.size(), c * (c - 1) / 2);
    }
    auto before = brute_force_opt(inst);
    auto after = brute_force_opt(s.instance);
    ASSERT_EQ(before.time, after.time) << seed;
    if (after.schedule && !after.time.is_infinite()) {
      Schedule back = project_schedule(inst, s, *after.schedule);
      EXPECT_EQ(Time(validate_schedule(inst, back).delivery_time), before.time) << seed;
    }
  }
}

TEST(Simplify, FigureOne) {
  Instance inst = load("fig1.json");
  Simplified s = simplify_intersections(inst);
  EXPECT_EQ(brute_force_opt(s.instance).time, Time(Rational(5)));
  // u1, u3, u4 and t are shared.
  int helpers = 0;
  for (int x : s.map.agent_origin) helpers += x < 0 ? 1 : 0;
  EXPECT_EQ(helpers, 4);
  EXPECT_LE(IntersectionGraph(s.instance).max_degree(), IntersectionGraph(inst).max_degree() + 1);
}
