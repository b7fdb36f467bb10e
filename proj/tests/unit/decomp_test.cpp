#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace ddt;

namespace {

// Exact treewidth by dynamic programming over vertex subsets.
int exact_treewidth(const SimpleGraph& g) {
  const int n = g.n;
  if (n == 0) return -1;
  const unsigned full = (1u << n) - 1;
  // Vertices outside s and v that v reaches through s.
  auto q = [&](unsigned s, int v) {
    unsigned seen = 1u << v;
    unsigned out = 0;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : g.adj[x]) {
        unsigned bit = 1u << y;
        if (seen & bit) continue;
        seen |= bit;
        if (s & bit) {
          stack.push_back(y);
        } else {
          out |= bit;
        }
      }
    }
    return __builtin_popcount(out);
  };
  std::vector<int> tw(full + 1, n);
  tw[0] = -1;
  for (unsigned s = 1; s <= full; ++s) {
    for (int v = 0; v < n; ++v) {
      if (!(s & (1u << v))) continue;
      unsigned rest = s & ~(1u << v);
      tw[s] = std::min(tw[s], std::max(tw[rest], q(rest, v)));
    }
  }
  return tw[full];
}

SimpleGraph random_graph(std::mt19937& rng, int n, int percent) {
  SimpleGraph g(n);
  std::uniform_int_distribution<int> d(0, 99);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (d(rng) < percent) g.add_edge(u, v);
    }
  }
  return g;
}

SimpleGraph cycle(int n) {
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

}  // namespace

TEST(Decomposition, SmallKnownWidths) {
  SimpleGraph tri = cycle(3);
  TreeDecomposition td = min_fill_decomposition(tri);
  EXPECT_TRUE(validate_decomposition(td, tri).ok());
  EXPECT_EQ(td.width(), 2);
  EXPECT_EQ(exact_treewidth(tri), 2);

  SimpleGraph path(5);
  for (int i = 0; i + 1 < 5; ++i) path.add_edge(i, i + 1);
  EXPECT_EQ(min_fill_decomposition(path).width(), 1);
  EXPECT_EQ(min_fill_decomposition(cycle(7)).width(), 2);

  SimpleGraph k4(4);
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  }
  EXPECT_EQ(min_fill_decomposition(k4).width(), 3);

  SimpleGraph empty(3);
  TreeDecomposition e = min_fill_decomposition(empty);
  EXPECT_TRUE(validate_decomposition(e, empty).ok());
  EXPECT_EQ(e.width(), 0);
}

TEST(Decomposition, HeuristicsAreValidAndNeverBeatExact) {
  std::mt19937 rng(5);
  int exact_hits = 0;
  for (int trial = 0; trial < 150; ++trial) {
    SimpleGraph g = random_graph(rng, 2 + trial % 9, 20 + trial % 50);
    int tw = exact_treewidth(g);
    for (Heuristic h : {Heuristic::min_fill, Heuristic::min_degree}) {
      TreeDecomposition td = heuristic_decomposition(g, h);
      auto rep = validate_decomposition(td, g);
      ASSERT_TRUE(rep.ok()) << rep.failures.front();
      EXPECT_GE(td.width(), tw);
      if (h == Heuristic::min_fill && td.width() == tw) ++exact_hits;
    }
  }
  EXPECT_GT(exact_hits, 120);
}

TEST(Decomposition, ValidatorReportsWitnesses) {
  SimpleGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  TreeDecomposition td;
  td.bags = {{0, 1}, {2}, {1}};
  td.tree_edges = {{0, 1}, {1, 2}};
  auto rep = validate_decomposition(td, g);
  ASSERT_FALSE(rep.ok());
  bool edge = false;
  bool split = false;
  for (const auto& f : rep.failures) {
    edge |= f.find("edge {1,2}") != std::string::npos;
    split |= f.find("vertex 1 are disconnected") != std::string::npos;
  }
  EXPECT_TRUE(edge);
  EXPECT_TRUE(split);
}

TEST(NiceDecomposition, IntroducesEveryEdgeOnce) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 8;
    SimpleGraph g = random_graph(rng, n, 35);
    TreeDecomposition td = min_fill_decomposition(g);
    auto edges = g.edges();
    NiceTreeDecomposition nt = make_nice(td, n, edges);
    auto rep = validate_decomposition(nt, n);
    ASSERT_TRUE(rep.ok()) << rep.failures.front();
    std::vector<int> count(edges.size(), 0);
    for (const auto& nd : nt.nodes) {
      if (nd.kind == NodeKind::introduce_edge) ++count[nd.edge];
      if (nd.kind == NodeKind::join) { EXPECT_EQ(nd.children.size(), 2u); }
      if (nd.kind == NodeKind::leaf) { EXPECT_TRUE(nd.bag.empty()); }
      for (int c : nd.children) EXPECT_LT(c, &nd - nt.nodes.data());
    }
    for (int c : count) EXPECT_EQ(c, 1);
    EXPECT_TRUE(nt.nodes[nt.root].bag.empty());
    EXPECT_EQ(nt.width(), td.width());
  }
}

TEST(NiceDecomposition, AlwaysPresentVerticesSitInEveryBag) {
  SimpleGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  TreeDecomposition td = min_fill_decomposition(g);
  std::vector<std::pair<int, int>> edges = g.edges();
  edges.emplace_back(3, 0);
  edges.emplace_back(3, 2);
  NiceTreeDecomposition nt = make_nice(td, 4, edges, {3});
  ASSERT_TRUE(validate_decomposition(nt, 4).ok());
  for (const auto& nd : nt.nodes) EXPECT_TRUE(std::binary_search(nd.bag.begin(), nd.bag.end(), 3));
  EXPECT_EQ(nt.nodes[nt.root].bag, std::vector<int>{3});
}

TEST(NiceDecomposition, ValidatorCatchesDoubleIntroduction) {
  SimpleGraph g(2);
  g.add_edge(0, 1);
  NiceTreeDecomposition nt = make_nice(min_fill_decomposition(g), 2, g.edges());
  int at = -1;
  for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
    if (nt.nodes[i].kind == NodeKind::introduce_edge) at = static_cast<int>(i);
  }
  ASSERT_GE(at, 0);
  NiceNode dup = nt.nodes[at];
  dup.children = {at};
  nt.nodes.push_back(dup);
  int parent = -1;
  for (std::size_t i = 0; i + 1 < nt.nodes.size(); ++i) {
    for (int& c : nt.nodes[i].children) {
      if (c == at) {
        c = static_cast<int>(nt.nodes.size()) - 1;
        parent = static_cast<int>(i);
      }
    }
  }
  ASSERT_GE(parent, 0);
  EXPECT_FALSE(validate_decomposition(nt, 2).ok());
}

TEST(EventDecomposition, FigureThreeBags) {
  Instance inst = testing_ddt::load("fig3.json");
  EventSequence seq = path_event_sequence(inst);
  std::vector<std::vector<std::string>> got;
  for (const auto& bag : coordinate_bags(seq)) {
    std::vector<std::string> ids;
    for (int x : bag) ids.push_back(seq.agents[x].id);
    std::sort(ids.begin(), ids.end());
    got.push_back(ids);
  }
  std::vector<std::vector<std::string>> want = {{"a1", "a2"}, {"a1", "a2", "a3"}, {"a2", "a3"}, {"a2", "a3", "a4"},
                                                {"a2", "a4"}, {"a2", "a4", "a5"}, {"a2", "a4"}, {}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(seq.width(), 2);
  EXPECT_EQ(thickness(inst), 3);
  EXPECT_EQ(canonicalize_path(inst).seq.events.size(), 14u);
}
