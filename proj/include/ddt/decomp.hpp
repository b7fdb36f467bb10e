#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "model.hpp"

namespace ddt {

struct SimpleGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted, no duplicates, no loops

  SimpleGraph() = default;
  explicit SimpleGraph(int vertices) : n(vertices), adj(vertices) {}

  void add_edge(int u, int v) {
    if (u == v) return;
    auto put = [](std::vector<int>& row, int x) {
      auto it = std::lower_bound(row.begin(), row.end(), x);
      if (it == row.end() || *it != x) row.insert(it, x);
    };
    put(adj[u], v);
    put(adj[v], u);
  }
  [[nodiscard]] bool has_edge(int u, int v) const { return std::binary_search(adj[u].begin(), adj[u].end(), v); }
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u) {
      for (int v : adj[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }
};

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // sorted
  std::vector<std::pair<int, int>> tree_edges;
  int root = -1;

  [[nodiscard]] int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }
};

enum class NodeKind { leaf, introduce, forget, introduce_edge, join };

inline const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::introduce: return "introduce";
    case NodeKind::forget: return "forget";
    case NodeKind::introduce_edge: return "introduce-edge";
    case NodeKind::join: return "join";
  }
  return "?";
}

struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  std::vector<int> bag;  // sorted
  int vertex = -1;       // introduce / forget
  int edge = -1;         // introduce_edge: index into NiceTreeDecomposition::edges
  std::vector<int> children;
};

struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> always_present;  // sorted; contained in every bag
  int root = -1;

  [[nodiscard]] int width() const {
    int w = -1;
    for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
    return w;
  }
};

enum class Heuristic { min_fill, min_degree };

// Greedy elimination ordering; ties go to the smaller degree, then the smaller id.
inline TreeDecomposition heuristic_decomposition(const SimpleGraph& g, Heuristic h = Heuristic::min_fill) {
  const int n = g.n;
  std::vector<std::set<int>> adj(n);
  for (int u = 0; u < n; ++u) adj[u] = {g.adj[u].begin(), g.adj[u].end()};
  std::vector<bool> gone(n, false);
  std::vector<int> order;
  std::vector<int> position(n, -1);
  std::vector<std::vector<int>> higher(n);

  auto fill_in = [&](int v) {
    long long f = 0;
    for (auto i = adj[v].begin(); i != adj[v].end(); ++i) {
      for (auto j = std::next(i); j != adj[v].end(); ++j) {
        if (!adj[*i].count(*j)) ++f;
      }
    }
    return f;
  };

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = 0;
    std::size_t best_deg = 0;
    for (int v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long long f = h == Heuristic::min_fill ? fill_in(v) : 0;
      std::size_t d = adj[v].size();
      if (best < 0 || f < best_fill || (f == best_fill && d < best_deg)) {
        best = v;
        best_fill = f;
        best_deg = d;
      }
    }
    int v = best;
    gone[v] = true;
    position[v] = step;
    order.push_back(v);
    higher[v] = {adj[v].begin(), adj[v].end()};
    for (int a : adj[v]) {
      for (int b : adj[v]) {
        if (a != b) adj[a].insert(b);
      }
    }
    for (int a : adj[v]) adj[a].erase(v);
    adj[v].clear();
  }

  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<int> comp_roots;
  for (int v = 0; v < n; ++v) {
    auto bag = higher[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[v] = bag;
    if (higher[v].empty()) {
      comp_roots.push_back(v);
    } else {
      int parent = *std::min_element(higher[v].begin(), higher[v].end(),
                                     [&](int a, int b) { return position[a] < position[b]; });
      td.tree_edges.emplace_back(parent, v);
    }
  }
  std::sort(comp_roots.begin(), comp_roots.end(), [&](int a, int b) { return position[a] < position[b]; });
  for (std::size_t i = 0; i + 1 < comp_roots.size(); ++i) td.tree_edges.emplace_back(comp_roots.back(), comp_roots[i]);
  td.root = comp_roots.empty() ? -1 : comp_roots.back();
  return td;
}

inline TreeDecomposition min_fill_decomposition(const SimpleGraph& g) {
  return heuristic_decomposition(g, Heuristic::min_fill);
}

struct DecompositionReport {
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

namespace detail {

inline bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

// Components of the node set {i : bag i contains u} within the tree given by adjacency lists.
inline std::vector<std::vector<int>> occurrence_components(const std::vector<std::vector<int>>& tree_adj,
                                                           const std::vector<std::vector<int>>& bags, int u) {
  std::vector<int> comp(bags.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < bags.size(); ++s) {
    if (comp[s] >= 0 || !contains(bags[s], u)) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      out[id].push_back(x);
      for (int y : tree_adj[x]) {
        if (comp[y] < 0 && contains(bags[y], u)) {
          comp[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  return out;
}

inline std::string set_text(std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

}  // namespace detail

inline DecompositionReport validate_decomposition(const TreeDecomposition& td, const SimpleGraph& g) {
  DecompositionReport r;
  const int m = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> tree_adj(m);
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= m || b >= m) {
      r.failures.push_back("tree edge references a missing bag");
      return r;
    }
    tree_adj[a].push_back(b);
    tree_adj[b].push_back(a);
  }
  if (m > 0) {
    if (static_cast<int>(td.tree_edges.size()) != m - 1) r.failures.push_back("decomposition tree has wrong edge count");
    std::vector<bool> seen(m, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++count;
      for (int y : tree_adj[x]) {
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    if (count != m) r.failures.push_back("decomposition tree is disconnected");
  }
  for (int u = 0; u < g.n; ++u) {
    auto comps = detail::occurrence_components(tree_adj, td.bags, u);
    if (comps.empty()) r.failures.push_back("vertex " + std::to_string(u) + " appears in no bag");
    if (comps.size() > 1) {
      r.failures.push_back("bags containing vertex " + std::to_string(u) + " are disconnected: " +
                           detail::set_text(comps[0]) + " vs " + detail::set_text(comps[1]));
    }
  }
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (const auto& b : td.bags) {
      if (detail::contains(b, u) && detail::contains(b, v)) {
        found = true;
        break;
      }
    }
    if (!found) r.failures.push_back("edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag");
  }
  return r;
}

// Converts a decomposition to nice form. Every edge of `edges` gets its own introduce-edge node, placed
// directly below the forget of whichever endpoint leaves first. Vertices in `always_present` are added to
// every bag, including leaves and the root.
inline NiceTreeDecomposition make_nice(const TreeDecomposition& td, int vertex_count,
                                       const std::vector<std::pair<int, int>>& edges,
                                       std::vector<int> always_present = {}) {
  std::sort(always_present.begin(), always_present.end());
  NiceTreeDecomposition nt;
  nt.edges = edges;
  nt.always_present = always_present;

  const int m = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> tree_adj(m);
  for (auto [a, b] : td.tree_edges) {
    tree_adj[a].push_back(b);
    tree_adj[b].push_back(a);
  }

  std::vector<std::vector<int>> incident(vertex_count);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    incident[edges[e].first].push_back(e);
    incident[edges[e].second].push_back(e);
  }
  std::vector<bool> introduced(edges.size(), false);

  auto with_ap = [&](std::vector<int> bag) {
    for (int a : always_present) {
      if (!detail::contains(bag, a)) bag.push_back(a);
    }
    std::sort(bag.begin(), bag.end());
    return bag;
  };
  auto add = [&](NiceNode nd) {
    nt.nodes.push_back(std::move(nd));
    return static_cast<int>(nt.nodes.size()) - 1;
  };
  auto introduce = [&](int child, int v) {
    NiceNode nd;
    nd.kind = NodeKind::introduce;
    nd.vertex = v;
    nd.bag = nt.nodes[child].bag;
    nd.bag.insert(std::lower_bound(nd.bag.begin(), nd.bag.end(), v), v);
    nd.children = {child};
    return add(std::move(nd));
  };
  auto edge_node = [&](int child, int e) {
    NiceNode nd;
    nd.kind = NodeKind::introduce_edge;
    nd.edge = e;
    nd.bag = nt.nodes[child].bag;
    nd.children = {child};
    introduced[e] = true;
    return add(std::move(nd));
  };
  auto forget = [&](int child, int v) {
    int cur = child;
    for (int e : incident[v]) {
      if (introduced[e]) continue;
      int w = edges[e].first == v ? edges[e].second : edges[e].first;
      if (detail::contains(nt.nodes[cur].bag, w)) cur = edge_node(cur, e);
    }
    NiceNode nd;
    nd.kind = NodeKind::forget;
    nd.vertex = v;
    nd.bag = nt.nodes[cur].bag;
    nd.bag.erase(std::lower_bound(nd.bag.begin(), nd.bag.end(), v));
    nd.children = {cur};
    return add(std::move(nd));
  };
  auto leaf = [&]() {
    NiceNode nd;
    nd.kind = NodeKind::leaf;
    nd.bag = always_present;
    return add(std::move(nd));
  };
  auto transition = [&](int node, const std::vector<int>& target) {
    int cur = node;
    auto from = nt.nodes[cur].bag;
    for (int v : from) {
      if (!detail::contains(target, v)) cur = forget(cur, v);
    }
    for (int v : target) {
      if (!detail::contains(nt.nodes[cur].bag, v)) cur = introduce(cur, v);
    }
    return cur;
  };

  std::function<int(int, int)> build = [&](int t, int parent) -> int {
    auto target = with_ap(td.bags[t]);
    std::vector<int> parts;
    for (int c : tree_adj[t]) {
      if (c == parent) continue;
      parts.push_back(transition(build(c, t), target));
    }
    if (parts.empty()) parts.push_back(transition(leaf(), target));
    int cur = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
      NiceNode nd;
      nd.kind = NodeKind::join;
      nd.bag = target;
      nd.children = {cur, parts[i]};
      cur = add(std::move(nd));
    }
    return cur;
  };

  int top = m > 0 ? transition(build(td.root, -1), always_present) : leaf();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (!introduced[e] && detail::contains(nt.nodes[top].bag, edges[e].first) &&
        detail::contains(nt.nodes[top].bag, edges[e].second)) {
      top = edge_node(top, e);
    }
  }
  nt.root = top;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (!introduced[e]) throw Error("make_nice: edge not covered by the decomposition");
  }
  return nt;
}

inline DecompositionReport validate_decomposition(const NiceTreeDecomposition& nt, int vertex_count) {
  DecompositionReport r;
  const int m = static_cast<int>(nt.nodes.size());
  auto fail = [&](int node, const std::string& what) {
    r.failures.push_back("node " + std::to_string(node) + ": " + what);
  };
  if (nt.root < 0 || nt.root >= m) {
    r.failures.push_back("missing root");
    return r;
  }
  if (nt.nodes[nt.root].bag != nt.always_present) fail(nt.root, "root bag is not empty");

  std::vector<int> parent(m, -1);
  std::vector<std::vector<int>> tree_adj(m);
  for (int i = 0; i < m; ++i) {
    for (int c : nt.nodes[i].children) {
      if (c < 0 || c >= m) {
        fail(i, "child out of range");
        return r;
      }
      if (parent[c] >= 0) fail(c, "has two parents");
      parent[c] = i;
      tree_adj[i].push_back(c);
      tree_adj[c].push_back(i);
    }
  }
  for (int i = 0; i < m; ++i) {
    if (i != nt.root && parent[i] < 0) fail(i, "detached from the root");
  }

  std::vector<int> count(nt.edges.size(), 0);
  for (int i = 0; i < m; ++i) {
    const NiceNode& nd = nt.nodes[i];
    if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) fail(i, "bag not sorted");
    for (int a : nt.always_present) {
      if (!detail::contains(nd.bag, a)) fail(i, "bag misses a designated vertex");
    }
    auto child_bag = [&](int j) -> const std::vector<int>& { return nt.nodes[nd.children[j]].bag; };
    switch (nd.kind) {
      case NodeKind::leaf:
        if (!nd.children.empty()) fail(i, "leaf has children");
        if (nd.bag != nt.always_present) fail(i, "leaf bag is not empty");
        break;
      case NodeKind::introduce: {
        if (nd.children.size() != 1) {
          fail(i, "introduce needs one child");
          break;
        }
        auto expect = child_bag(0);
        if (detail::contains(expect, nd.vertex)) fail(i, "introduced vertex already present");
        expect.push_back(nd.vertex);
        std::sort(expect.begin(), expect.end());
        if (expect != nd.bag) fail(i, "introduce bag mismatch");
        break;
      }
      case NodeKind::forget: {
        if (nd.children.size() != 1) {
          fail(i, "forget needs one child");
          break;
        }
        auto expect = child_bag(0);
        if (!detail::contains(expect, nd.vertex)) fail(i, "forgotten vertex absent from child");
        expect.erase(std::remove(expect.begin(), expect.end(), nd.vertex), expect.end());
        if (expect != nd.bag) fail(i, "forget bag mismatch");
        break;
      }
      case NodeKind::introduce_edge: {
        if (nd.children.size() != 1) {
          fail(i, "introduce-edge needs one child");
          break;
        }
        if (child_bag(0) != nd.bag) fail(i, "introduce-edge changes the bag");
        if (nd.edge < 0 || nd.edge >= static_cast<int>(nt.edges.size())) {
          fail(i, "introduce-edge without edge");
          break;
        }
        ++count[nd.edge];
        auto [u, v] = nt.edges[nd.edge];
        if (!detail::contains(nd.bag, u) || !detail::contains(nd.bag, v)) fail(i, "edge endpoints not in bag");
        break;
      }
      case NodeKind::join:
        if (nd.children.size() != 2) {
          fail(i, "join needs two children");
          break;
        }
        if (child_bag(0) != nd.bag || child_bag(1) != nd.bag) fail(i, "join bags differ");
        break;
    }
  }
  for (std::size_t e = 0; e < nt.edges.size(); ++e) {
    if (count[e] != 1) {
      r.failures.push_back("edge {" + std::to_string(nt.edges[e].first) + "," + std::to_string(nt.edges[e].second) +
                           "} introduced " + std::to_string(count[e]) + " times");
    }
  }

  // Edges introduced strictly below each node, to check join bags.
  std::vector<std::vector<int>> below(m);
  std::vector<int> order;
  std::vector<int> stack{nt.root};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (int c : nt.nodes[x].children) stack.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NiceNode& nd = nt.nodes[*it];
    for (int c : nd.children) {
      below[*it].insert(below[*it].end(), below[c].begin(), below[c].end());
      if (nt.nodes[c].kind == NodeKind::introduce_edge) below[*it].push_back(nt.nodes[c].edge);
    }
    if (nd.kind == NodeKind::join) {
      for (int e : below[*it]) {
        auto [u, v] = nt.edges[e];
        if (detail::contains(nd.bag, u) && detail::contains(nd.bag, v)) {
          fail(*it, "join bag holds both ends of already introduced edge {" + std::to_string(u) + "," +
                        std::to_string(v) + "}");
        }
      }
    }
  }

  std::vector<std::vector<int>> bags(m);
  for (int i = 0; i < m; ++i) bags[i] = nt.nodes[i].bag;
  for (int u = 0; u < vertex_count; ++u) {
    auto comps = detail::occurrence_components(tree_adj, bags, u);
    if (comps.empty()) r.failures.push_back("vertex " + std::to_string(u) + " appears in no node");
    if (comps.size() > 1) {
      r.failures.push_back("nodes containing vertex " + std::to_string(u) + " are disconnected: " +
                           detail::set_text(comps[0]) + " vs " + detail::set_text(comps[1]));
    }
  }
  return r;
}

}  // namespace ddt
