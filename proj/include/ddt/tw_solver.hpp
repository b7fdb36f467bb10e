#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "decomp.hpp"
#include "distances.hpp"
#include "intersect.hpp"
#include "order_solver.hpp"

namespace ddt {

// Simplified instance plus the terminal agents a_s, a_t (areas {s'} and {t'}) and their virtual
// partners a_s', a_t', which never enter a bag.
struct AugmentedInstance {
  Simplified simplified;
  IntersectionGraph ig;
  AgentDistances dist;
  int a_s = -1;
  int a_t = -1;
  int a_s_virtual = -1;
  int a_t_virtual = -1;
  std::vector<std::vector<int>> neighbors;   // over real agents plus a_s, a_t
  std::vector<std::pair<int, int>> edges;    // intersection edges plus terminal edges
  std::map<std::pair<int, int>, int> edge_index;
  bool feasible = true;

  [[nodiscard]] const Instance& instance() const { return simplified.instance; }
  [[nodiscard]] int agent_count() const { return a_t + 1; }

  // D(x, a): the unique vertex shared by two adjacent agents.
  [[nodiscard]] int point(int x, int a) const {
    if (x == a_s || a == a_s || x == a_s_virtual || a == a_s_virtual) return instance().source;
    if (x == a_t || a == a_t || x == a_t_virtual || a == a_t_virtual) return instance().target;
    auto p = intersection_point(ig, x, a);
    if (!p) throw Error("agents " + std::to_string(x) + " and " + std::to_string(a) + " are not adjacent");
    return *p;
  }

  [[nodiscard]] bool adjacent(int a, int b) const {
    if (a == a_s_virtual || b == a_s_virtual) return a == a_s || b == a_s;
    if (a == a_t_virtual || b == a_t_virtual) return a == a_t || b == a_t;
    return edge_index.count(Graph::pair_key(a, b)) > 0;
  }

  // Time agent a spends between receiving the package from x and handing it to y.
  [[nodiscard]] Rational seg_cost(int x, int a, int y) const {
    if (!adjacent(x, a) || !adjacent(a, y)) throw Error("seg_cost over non-adjacent agents");
    if (a == a_s || a == a_t) return Rational(0);
    return dist.time(a, point(x, a), point(a, y)).value();
  }

  [[nodiscard]] Rational extended_sequence_cost(const std::vector<int>& seq) const {
    Rational total(0);
    for (std::size_t j = 1; j + 1 < seq.size(); ++j) total += seg_cost(seq[j - 1], seq[j], seq[j + 1]);
    return total;
  }
};

inline AugmentedInstance augment_with_terminals(const Instance& inst) {
  AugmentedInstance ai;
  ai.simplified = simplify_intersections(inst);
  const Instance& I = ai.simplified.instance;
  ai.ig = IntersectionGraph(I);
  ai.dist = AgentDistances(I);
  const int K = I.k();
  ai.a_s = K;
  ai.a_t = K + 1;
  ai.a_s_virtual = K + 2;
  ai.a_t_virtual = K + 3;
  auto cover = cover_sets(I);
  const auto& bs = cover[I.source];
  const auto& bt = cover[I.target];
  ai.feasible = !bs.empty() && !bt.empty();
  ai.neighbors.assign(K + 2, {});
  for (int a = 0; a < K; ++a) ai.neighbors[a] = ai.ig.neighbors(a);
  ai.edges = ai.ig.simple_edges();
  for (int a : bs) {
    ai.edges.emplace_back(a, ai.a_s);
    ai.neighbors[a].push_back(ai.a_s);
    ai.neighbors[ai.a_s].push_back(a);
  }
  for (int a : bt) {
    ai.edges.emplace_back(a, ai.a_t);
    ai.neighbors[a].push_back(ai.a_t);
    ai.neighbors[ai.a_t].push_back(a);
  }
  for (auto& row : ai.neighbors) std::sort(row.begin(), row.end());
  for (int e = 0; e < static_cast<int>(ai.edges.size()); ++e) ai.edge_index[Graph::pair_key(ai.edges[e].first, ai.edges[e].second)] = e;
  return ai;
}

// Per bag agent: degree in the partial path forest; for degree 1 also the other end of its path,
// whether it is the first end, the planned next neighbour (psp, edge not yet introduced) and the
// neighbour it already uses (npip, edge introduced).
struct TwSlot {
  int deg = 0;
  int partner = -1;
  int first = 0;
  int psp = -1;
  int npip = -1;
  friend bool operator==(const TwSlot&, const TwSlot&) = default;
};

using TwDpKey = std::vector<TwSlot>;  // aligned with the node's sorted bag

struct TwDpEntry {
  TwDpKey key;
  Rational cost;
  int left = -1;   // child entry
  int right = -1;  // second child entry at joins
  bool used = false;  // introduce-edge: the edge is part of the forest
};

struct TwStats {
  long long states = 0;
  int max_states = 0;
  int width = 0;
  int nodes = 0;
  std::vector<int> node_states;
};

struct TwResult {
  Time time = Time::infinity();
  std::vector<int> sequence;  // original agents in carrying order
  std::vector<int> augmented_path;
  std::optional<Schedule> schedule;
  TwStats stats;
};

namespace detail {

struct KeyHash {
  std::size_t operator()(const TwDpKey& k) const {
    std::size_t h = k.size();
    for (const TwSlot& s : k) {
      for (int x : {s.deg, s.partner, s.first, s.psp, s.npip}) h = h * 1000003u ^ static_cast<std::size_t>(x + 7);
    }
    return h;
  }
};

class TwTable {
 public:
  void offer(TwDpKey key, Rational cost, int left, int right = -1, bool used = false) {
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, static_cast<int>(entries_.size()));
      entries_.push_back({std::move(key), std::move(cost), left, right, used});
    } else if (cost < entries_[it->second].cost) {
      TwDpEntry& e = entries_[it->second];
      e.cost = std::move(cost);
      e.left = left;
      e.right = right;
      e.used = used;
    }
  }
  std::vector<TwDpEntry> take() { return std::move(entries_); }

 private:
  std::unordered_map<TwDpKey, int, KeyHash> index_;
  std::vector<TwDpEntry> entries_;
};

inline int slot_of(const std::vector<int>& bag, int v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

}  // namespace detail

class TreewidthDp {
 public:
  TreewidthDp(const AugmentedInstance& ai, const NiceTreeDecomposition& nt) : ai_(ai), nt_(nt) {
    const int m = static_cast<int>(nt.nodes.size());
    tin_.assign(m, 0);
    tout_.assign(m, 0);
    int clock = 0;
    std::vector<std::pair<int, bool>> stack{{nt.root, false}};
    while (!stack.empty()) {
      auto [x, done] = stack.back();
      stack.pop_back();
      if (done) {
        tout_[x] = clock - 1;
        continue;
      }
      tin_[x] = clock++;
      stack.push_back({x, true});
      for (int c : nt.nodes[x].children) stack.push_back({c, false});
    }
    edge_node_.assign(nt.edges.size(), -1);
    for (int i = 0; i < m; ++i) {
      if (nt.nodes[i].kind == NodeKind::introduce_edge) edge_node_[nt.nodes[i].edge] = i;
    }
  }

  void run() {
    const int m = static_cast<int>(nt_.nodes.size());
    table_.assign(m, {});
    for (int i = 0; i < m; ++i) {
      const NiceNode& nd = nt_.nodes[i];
      switch (nd.kind) {
        case NodeKind::leaf: table_[i] = handle_leaf(i); break;
        case NodeKind::introduce: table_[i] = handle_introduce(i); break;
        case NodeKind::forget: table_[i] = handle_forget(i); break;
        case NodeKind::introduce_edge: table_[i] = handle_introduce_edge(i); break;
        case NodeKind::join: table_[i] = handle_join(i); break;
      }
    }
  }

  [[nodiscard]] const std::vector<TwDpEntry>& entries(int node) const { return table_.at(node); }

  // Best root entry whose single path runs from a_s to a_t.
  [[nodiscard]] int root_entry() const {
    const auto& bag = nt_.nodes[nt_.root].bag;
    int is = detail::slot_of(bag, ai_.a_s);
    int it = detail::slot_of(bag, ai_.a_t);
    const auto& es = table_[nt_.root];
    int best = -1;
    for (int i = 0; i < static_cast<int>(es.size()); ++i) {
      const TwDpKey& k = es[i].key;
      if (bag.size() != 2) continue;
      if (k[is].deg != 1 || k[it].deg != 1 || k[is].partner != ai_.a_t || !k[is].first || k[it].first) continue;
      if (best < 0 || es[i].cost < es[best].cost) best = i;
    }
    return best;
  }

  // Edges of the forest behind an entry.
  [[nodiscard]] std::vector<std::pair<int, int>> forest(int node, int entry) const {
    std::vector<std::pair<int, int>> out;
    std::vector<std::pair<int, int>> stack{{node, entry}};
    while (!stack.empty()) {
      auto [x, e] = stack.back();
      stack.pop_back();
      const NiceNode& nd = nt_.nodes[x];
      const TwDpEntry& en = table_[x][e];
      if (nd.kind == NodeKind::introduce_edge && en.used) out.push_back(nt_.edges[nd.edge]);
      if (!nd.children.empty() && en.left >= 0) stack.push_back({nd.children[0], en.left});
      if (nd.children.size() == 2 && en.right >= 0) stack.push_back({nd.children[1], en.right});
    }
    return out;
  }

  [[nodiscard]] bool edge_below(int a, int b, int node) const {
    auto it = ai_.edge_index.find(Graph::pair_key(a, b));
    if (it == ai_.edge_index.end()) return false;
    int en = edge_node_[it->second];
    return tin_[node] <= tin_[en] && tin_[en] <= tout_[node];
  }

 private:
  // Possible psp values for a fresh degree-1 agent a whose npip is `other`.
  [[nodiscard]] std::vector<int> psp_candidates(int a, int other, int node) const {
    if (a == ai_.a_s) return {ai_.a_s_virtual};
    if (a == ai_.a_t) return {ai_.a_t_virtual};
    std::vector<int> out;
    for (int w : ai_.neighbors[a]) {
      if (w != other && !edge_below(a, w, node)) out.push_back(w);
    }
    return out;
  }

  std::vector<TwDpEntry> handle_leaf(int i) const {
    detail::TwTable t;
    t.offer(TwDpKey(nt_.nodes[i].bag.size()), Rational(0), -1);
    return t.take();
  }

  std::vector<TwDpEntry> handle_introduce(int i) const {
    const NiceNode& nd = nt_.nodes[i];
    int pos = detail::slot_of(nd.bag, nd.vertex);
    const auto& child = table_[nd.children[0]];
    detail::TwTable t;
    for (int c = 0; c < static_cast<int>(child.size()); ++c) {
      TwDpKey k = child[c].key;
      k.insert(k.begin() + pos, TwSlot{});
      t.offer(std::move(k), child[c].cost, c);
    }
    return t.take();
  }

  std::vector<TwDpEntry> handle_forget(int i) const {
    const NiceNode& nd = nt_.nodes[i];
    const auto& cbag = nt_.nodes[nd.children[0]].bag;
    int pos = detail::slot_of(cbag, nd.vertex);
    const auto& child = table_[nd.children[0]];
    detail::TwTable t;
    for (int c = 0; c < static_cast<int>(child.size()); ++c) {
      int d = child[c].key[pos].deg;
      if (d == 1) continue;
      TwDpKey k = child[c].key;
      k.erase(k.begin() + pos);
      t.offer(std::move(k), child[c].cost, c);
    }
    return t.take();
  }

  std::vector<TwDpEntry> handle_introduce_edge(int i) const {
    const NiceNode& nd = nt_.nodes[i];
    const auto& bag = nd.bag;
    auto [u, v] = nt_.edges[nd.edge];
    const int pu = detail::slot_of(bag, u);
    const int pv = detail::slot_of(bag, v);
    const auto& child = table_[nd.children[0]];
    detail::TwTable t;
    auto is_terminal = [&](int a) { return a == ai_.a_s || a == ai_.a_t; };

    for (int c = 0; c < static_cast<int>(child.size()); ++c) {
      const TwDpKey& key = child[c].key;
      const TwSlot& su = key[pu];
      const TwSlot& sv = key[pv];
      const Rational& cost = child[c].cost;

      // Edge left out: nobody may still be waiting for it.
      if (!(su.deg == 1 && su.psp == v) && !(sv.deg == 1 && sv.psp == u)) t.offer(key, cost, c, -1, false);

      if (su.deg == 2 || sv.deg == 2) continue;
      if ((is_terminal(u) && su.deg != 0) || (is_terminal(v) && sv.deg != 0)) continue;

      if (su.deg == 0 && sv.deg == 0) {
        for (int au : psp_candidates(u, v, i)) {
          for (int av : psp_candidates(v, u, i)) {
            Rational add = cost + ai_.seg_cost(au, u, v) + ai_.seg_cost(u, v, av);
            for (int u_first = 0; u_first <= 1; ++u_first) {
              int first_agent = u_first ? u : v;
              int second_agent = u_first ? v : u;
              if (first_agent == ai_.a_t || second_agent == ai_.a_s) continue;
              TwDpKey k = key;
              k[pu] = {1, v, u_first, au, v};
              k[pv] = {1, u, 1 - u_first, av, u};
              t.offer(std::move(k), add, c, -1, true);
            }
          }
        }
      } else if (su.deg == 1 && sv.deg == 1) {
        if (su.psp != v || sv.psp != u || su.partner == v) continue;
        int p = su.partner;
        int q = sv.partner;
        // p..u then v..q must read in one direction.
        bool forward = !su.first && sv.first;
        bool backward = su.first && !sv.first;
        if (!forward && !backward) continue;
        TwDpKey k = key;
        k[pu] = {2, -1, 0, -1, -1};
        k[pv] = {2, -1, 0, -1, -1};
        k[detail::slot_of(bag, p)].partner = q;
        k[detail::slot_of(bag, q)].partner = p;
        t.offer(std::move(k), cost, c, -1, true);
      } else {
        // One end extends an existing path; the other starts on it.
        bool u_ext = su.deg == 1;
        int x = u_ext ? u : v;
        int y = u_ext ? v : u;
        const TwSlot& sx = u_ext ? su : sv;
        int px = u_ext ? pu : pv;
        int py = u_ext ? pv : pu;
        if (sx.psp != y) continue;
        int first = sx.first;
        if ((y == ai_.a_s && !first) || (y == ai_.a_t && first)) continue;
        int partner = sx.partner;
        for (int ay : psp_candidates(y, x, i)) {
          TwDpKey k = key;
          k[px] = {2, -1, 0, -1, -1};
          k[py] = {1, partner, first, ay, x};
          k[detail::slot_of(bag, partner)].partner = y;
          t.offer(std::move(k), cost + ai_.seg_cost(x, y, ay), c, -1, true);
        }
      }
    }
    return t.take();
  }

  std::vector<TwDpEntry> handle_join(int i) const {
    const NiceNode& nd = nt_.nodes[i];
    const auto& bag = nd.bag;
    const int b = static_cast<int>(bag.size());
    const int c1 = nd.children[0];
    const int c2 = nd.children[1];
    const auto& left = table_[c1];
    const auto& right = table_[c2];
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int r = 0; r < static_cast<int>(right.size()); ++r) {
      std::vector<int> degs(b);
      for (int s = 0; s < b; ++s) degs[s] = right[r].key[s].deg;
      groups[degs].push_back(r);
    }
    detail::TwTable t;
    for (int l = 0; l < static_cast<int>(left.size()); ++l) {
      const TwDpKey& k1 = left[l].key;
      for (const auto& [degs, members] : groups) {
        bool fits = true;
        for (int s = 0; s < b && fits; ++s) fits = k1[s].deg + degs[s] <= 2;
        if (!fits) continue;
        for (int r : members) {
          auto merged = combine(bag, k1, right[r].key, c1, c2);
          if (!merged) continue;
          t.offer(std::move(merged->first), left[l].cost + right[r].cost - merged->second, l, r);
        }
      }
    }
    return t.take();
  }

  // Glues two partial forests at the shared bag; returns the key and the doubly counted cost.
  std::optional<std::pair<TwDpKey, Rational>> combine(const std::vector<int>& bag, const TwDpKey& k1,
                                                      const TwDpKey& k2, int c1, int c2) const {
    const int b = static_cast<int>(bag.size());
    Rational twice(0);
    TwDpKey out(b);
    for (int s = 0; s < b; ++s) {
      const TwSlot& x = k1[s];
      const TwSlot& y = k2[s];
      int a = bag[s];
      if (x.deg == 1 && y.deg == 1) {
        if (x.psp != y.npip || x.npip != y.psp) return std::nullopt;
        twice += ai_.seg_cost(x.npip, a, x.psp);
        out[s] = {2, -1, 0, -1, -1};
      } else if (x.deg == 1) {
        if (edge_below(a, x.psp, c2)) return std::nullopt;
        out[s] = x;
      } else if (y.deg == 1) {
        if (edge_below(a, y.psp, c1)) return std::nullopt;
        out[s] = y;
      } else {
        out[s] = {x.deg + y.deg, -1, 0, -1, -1};
      }
    }
    // Walk each combined path from an end, alternating between the two children at seams.
    std::vector<char> seen1(b, 0);
    std::vector<char> seen2(b, 0);
    std::vector<char> walked(b, 0);
    for (int s = 0; s < b; ++s) {
      if (out[s].deg != 1 || walked[s]) continue;
      bool side1 = k1[s].deg == 1;
      const bool forward = (side1 ? k1 : k2)[s].first != 0;
      int cur = s;
      int end = -1;
      while (end < 0) {
        const TwDpKey& k = side1 ? k1 : k2;
        auto& seen = side1 ? seen1 : seen2;
        if (seen[cur] || (k[cur].first != 0) != forward) return std::nullopt;
        int other = detail::slot_of(bag, k[cur].partner);
        seen[cur] = seen[other] = 1;
        if (out[other].deg == 1) {
          end = other;
        } else {
          cur = other;
          side1 = !side1;
        }
      }
      walked[s] = walked[end] = 1;
      out[s].partner = bag[end];
      out[s].first = forward ? 1 : 0;
      out[end].partner = bag[s];
      out[end].first = forward ? 0 : 1;
    }
    for (int s = 0; s < b; ++s) {
      if (k1[s].deg == 1 && !seen1[s]) return std::nullopt;
      if (k2[s].deg == 1 && !seen2[s]) return std::nullopt;
    }
    return std::make_pair(std::move(out), twice);
  }

  const AugmentedInstance& ai_;
  const NiceTreeDecomposition& nt_;
  std::vector<int> tin_;
  std::vector<int> tout_;
  std::vector<int> edge_node_;
  std::vector<std::vector<TwDpEntry>> table_;
};

struct TwOptions {
  Heuristic heuristic = Heuristic::min_fill;
};

inline NiceTreeDecomposition augmented_decomposition(const AugmentedInstance& ai, Heuristic h = Heuristic::min_fill) {
  const int K = ai.instance().k();
  SimpleGraph g(K);
  for (auto [a, b] : ai.ig.simple_edges()) g.add_edge(a, b);
  TreeDecomposition td = heuristic_decomposition(g, h);
  return make_nice(td, K + 2, ai.edges, {ai.a_s, ai.a_t});
}

inline TwResult solve_treewidth(const Instance& inst, TwOptions opt = {}) {
  TwResult res;
  if (inst.source == inst.target) {
    res.time = Time(Rational(0));
    res.schedule = Schedule::empty(inst);
    return res;
  }
  AugmentedInstance ai = augment_with_terminals(inst);
  if (!ai.feasible) return res;
  NiceTreeDecomposition nt = augmented_decomposition(ai, opt.heuristic);
  auto report = validate_decomposition(nt, ai.agent_count());
  if (!report.ok()) throw Error("internal: invalid nice decomposition: " + report.failures.front());

  TreewidthDp dp(ai, nt);
  dp.run();
  res.stats.width = nt.width();
  res.stats.nodes = static_cast<int>(nt.nodes.size());
  for (int i = 0; i < res.stats.nodes; ++i) {
    int c = static_cast<int>(dp.entries(i).size());
    res.stats.node_states.push_back(c);
    res.stats.states += c;
    res.stats.max_states = std::max(res.stats.max_states, c);
  }
  int best = dp.root_entry();
  if (best < 0) return res;
  Rational value = dp.entries(nt.root)[best].cost;

  // The forest behind the root entry is one a_s..a_t path.
  auto edges = dp.forest(nt.root, best);
  std::map<int, std::vector<int>> adj;
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> path{ai.a_s};
  int prev = -1;
  while (path.back() != ai.a_t) {
    const auto& nb = adj[path.back()];
    int next = -1;
    for (int x : nb) {
      if (x != prev) next = x;
    }
    if (next < 0 || path.size() > edges.size() + 1) throw Error("internal: reconstructed forest is not an a_s-a_t path");
    prev = path.back();
    path.push_back(next);
  }
  if (path.size() != edges.size() + 1) throw Error("internal: reconstructed forest has extra edges");
  res.augmented_path = path;
  for (int a : path) {
    if (a == ai.a_s || a == ai.a_t) continue;
    int orig = ai.simplified.map.agent_origin[a];
    if (orig >= 0) res.sequence.push_back(orig);
  }
  AgentDistances dist(inst);
  auto fixed = solve_fixed_order(inst, res.sequence, dist);
  if (fixed.time != Time(value)) {
    throw Error("internal: reconstructed order gives " + fixed.time.str() + " but the table holds " + value.str());
  }
  res.time = Time(value);
  res.schedule = fixed.schedule;
  return res;
}

}  // namespace ddt
