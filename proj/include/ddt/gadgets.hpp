#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace ddt {

struct GadgetCounts {
  int element = 0;
  int helper = 0;
  int partition = 0;
  int p_transition = 0;
  int o_transition = 0;
  int g_transition = 0;
  [[nodiscard]] int total() const { return element + helper + partition + p_transition + o_transition + g_transition; }
};

struct GadgetSpec {
  std::vector<long long> p;
  int k = 2;
  Rational an{1};
  Rational P;
  Rational d;  // P^3
  std::vector<Rational> v_prime;  // v_j'
  std::vector<Rational> v;        // v_j
  Rational v_star;
  // Indices are 0-based: c[i][j][l], o[i][j].
  std::vector<std::vector<std::vector<Rational>>> c, c_prime;
  std::vector<std::vector<Rational>> o, o_prime;
  GadgetCounts counts;
  bool divisible = true;
  std::string tag;
};

struct GadgetInstance {
  Instance instance;
  GadgetSpec spec;
};

inline Rational yes_bound(const GadgetSpec& s) {
  Rational n(static_cast<long>(s.p.size()));
  Rational k(s.k);
  return (n - 1 + Rational(2) * s.P) * k + Rational(2) * n * k + n + k - 1;
}

inline GadgetInstance build_hardness_instance(const std::vector<long long>& p, int k, Rational an = Rational(1)) {
  if (p.empty()) throw Error("gadget needs at least one element");
  if (k < 2) throw Error("gadget needs k >= 2");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) throw Error("gadget elements must be positive");
    if (i > 0 && p[i] >= p[i - 1]) throw Error("gadget elements must be distinct and strictly decreasing");
  }
  if (an.sign() <= 0) throw Error("a(n) must be positive");
  GadgetInstance gi;
  GadgetSpec& s = gi.spec;
  const int n = static_cast<int>(p.size());
  s.p = p;
  s.k = k;
  s.an = an;
  long long total = std::accumulate(p.begin(), p.end(), 0LL);
  s.P = Rational(total);
  s.d = s.P * s.P * s.P;
  const Rational tower = s.d * an;
  for (int j = 0; j < k; ++j) {
    Rational vp = j == 0 ? tower + 1 : s.v.back() * tower + 1;
    s.v_prime.push_back(vp);
    s.v.push_back(vp * tower + 1);
  }
  s.v_star = s.v.back() * tower + 1;

  s.c.assign(n, std::vector<std::vector<Rational>>(k));
  s.c_prime = s.c;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      for (long long l = 0; l < p[i]; ++l) {
        Rational x;
        if (l > 0) {
          x = s.c_prime[i][j][l - 1] + s.v[j];
        } else if (i > 0) {
          x = s.c_prime[i - 1][j][p[i - 1] - 1] + s.v_star;
        } else if (j > 0) {
          x = s.c_prime[n - 1][j - 1][p[n - 1] - 1] + s.v_star;
        }
        s.c[i][j].push_back(x);
        s.c_prime[i][j].push_back(x + s.v_prime[j]);
      }
    }
  }
  auto last_c_prime = [&](int i, int j) { return s.c_prime[i][j][p[i] - 1]; };
  s.o.assign(n, std::vector<Rational>(k - 1));
  s.o_prime = s.o;
  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j < k - 1; ++j) {
      if (j > 0) {
        s.o[i][j] = s.o_prime[i][j - 1] + s.v_star;
      } else if (i == n - 1) {
        s.o[i][j] = last_c_prime(n - 1, k - 1) + s.v_star;
      } else {
        s.o[i][j] = s.o_prime[i + 1][k - 2] + s.v_star;
      }
      s.o_prime[i][j] = s.o[i][j] + 1;
    }
  }

  struct Spec {
    std::string id;
    Rational speed;
    Rational left, right;
  };
  std::vector<Spec> agents;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      agents.push_back({"e_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), s.v[j], s.c[i][j][0],
                        s.o_prime[i][k - 2]});
      ++s.counts.element;
    }
  }
  s.divisible = total % k == 0;
  long long helpers = s.divisible ? total - total / k : total - 1;
  if (!s.divisible) s.tag = "no-instance by divisibility";
  for (int j = 0; j < k; ++j) {
    for (long long h = 0; h < helpers; ++h) {
      agents.push_back({"h_" + std::to_string(j + 1) + "_" + std::to_string(h + 1), s.v_prime[j], s.c[0][j][0],
                        last_c_prime(n - 1, j)});
      ++s.counts.helper;
    }
    for (int i = 0; i < n; ++i) {
      for (long long l = 0; l + 1 < p[i]; ++l) {
        agents.push_back({"c_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(l + 1),
                          s.v_star, s.c_prime[i][j][l], s.c[i][j][l + 1]});
        ++s.counts.partition;
      }
    }
    for (int i = 0; i + 1 < n; ++i) {
      agents.push_back({"pt_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), s.v_star, last_c_prime(i, j),
                        s.c[i + 1][j][0]});
      ++s.counts.p_transition;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < k - 1; ++j) {
      agents.push_back({"ot_" + std::to_string(i + 1) + "_" + std::to_string(j + 1), s.v_star, s.o_prime[i][j],
                        s.o[i][j + 1]});
      ++s.counts.o_transition;
    }
  }
  for (int j = 0; j + 1 < k; ++j) {
    agents.push_back({"gt_p" + std::to_string(j + 1), s.v_star, last_c_prime(n - 1, j), s.c[0][j + 1][0]});
    ++s.counts.g_transition;
  }
  agents.push_back({"gt_po", s.v_star, last_c_prime(n - 1, k - 1), s.o[n - 1][0]});
  ++s.counts.g_transition;
  for (int i = n - 2; i >= 0; --i) {
    agents.push_back({"gt_o" + std::to_string(i + 1), s.v_star, s.o_prime[i + 1][k - 2], s.o[i][0]});
    ++s.counts.g_transition;
  }

  std::vector<Rational> points{Rational(0), s.o_prime[0][k - 2]};
  for (const auto& a : agents) {
    points.push_back(a.left);
    points.push_back(a.right);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Instance& inst = gi.instance;
  for (std::size_t x = 0; x < points.size(); ++x) inst.graph.add_vertex("x" + std::to_string(x));
  for (std::size_t x = 0; x + 1 < points.size(); ++x) {
    inst.graph.add_edge(static_cast<int>(x), static_cast<int>(x + 1), points[x + 1] - points[x]);
  }
  auto at = [&](const Rational& q) {
    return static_cast<int>(std::lower_bound(points.begin(), points.end(), q) - points.begin());
  };
  inst.source = at(Rational(0));
  inst.target = at(s.o_prime[0][k - 2]);
  for (const auto& a : agents) {
    if (!(a.left < a.right)) throw Error("internal: gadget interval " + a.id + " is empty");
    Agent ag;
    ag.id = a.id;
    ag.speed = a.speed;
    for (int x = at(a.left); x <= at(a.right); ++x) ag.vertices.push_back(x);
    normalize_agent(inst.graph, ag);
    inst.agents.push_back(std::move(ag));
  }
  validate_instance(inst);
  return gi;
}

inline std::pair<std::vector<long long>, int> three_to_kpartition(const std::vector<long long>& p) {
  if (p.size() % 3 != 0) throw Error("3-Partition input length must be divisible by 3");
  long long total = std::accumulate(p.begin(), p.end(), 0LL);
  std::vector<long long> out;
  for (long long x : p) out.push_back(x + total);
  return {out, static_cast<int>(p.size() / 3)};
}

struct PartitionWitness {
  bool yes = false;
  std::vector<std::vector<long long>> parts;
};

// Exhaustive search for a split of p into k subsets of equal sum.
inline PartitionWitness partition_into_k_checker(const std::vector<long long>& p, int k) {
  PartitionWitness w;
  if (k <= 0) return w;
  long long total = std::accumulate(p.begin(), p.end(), 0LL);
  if (total % k != 0) return w;
  long long target = total / k;
  std::vector<long long> items = p;
  std::sort(items.rbegin(), items.rend());
  if (!items.empty() && items.front() > target) return w;
  std::vector<long long> sums(k, 0);
  std::vector<int> where(items.size(), -1);
  auto place = [&](auto&& self, std::size_t idx) -> bool {
    if (idx == items.size()) return true;
    for (int b = 0; b < k; ++b) {
      if (sums[b] + items[idx] > target) continue;
      sums[b] += items[idx];
      where[idx] = b;
      if (self(self, idx + 1)) return true;
      sums[b] -= items[idx];
      if (sums[b] == 0) break;  // bins still empty are interchangeable
    }
    return false;
  };
  if (!place(place, 0)) return w;
  w.yes = true;
  w.parts.assign(k, {});
  for (std::size_t i = 0; i < items.size(); ++i) w.parts[where[i]].push_back(items[i]);
  return w;
}

}  // namespace ddt
