#pragma once

#include <string>
#include <tuple>
#include <vector>

#include <ddt/ddt.hpp>

namespace testing_ddt {

inline ddt::Instance load(const std::string& name) { return ddt::load_instance(std::string(DDT_DATA_DIR) + "/" + name); }

struct Interval {
  std::string id;
  std::string speed;
  int left;
  int right;
};

// Path x0..x{n-1}; lengths[i] joins x{i} and x{i+1}.
inline ddt::Instance path_instance(const std::vector<std::string>& lengths, const std::vector<Interval>& agents, int s,
                                   int t) {
  ddt::json j;
  const int n = static_cast<int>(lengths.size()) + 1;
  for (int v = 0; v < n; ++v) j["vertices"].push_back("x" + std::to_string(v));
  j["edges"] = ddt::json::array();
  for (int v = 0; v + 1 < n; ++v) {
    j["edges"].push_back({{"u", "x" + std::to_string(v)}, {"v", "x" + std::to_string(v + 1)}, {"len", lengths[v]}});
  }
  j["source"] = "x" + std::to_string(s);
  j["target"] = "x" + std::to_string(t);
  j["agents"] = ddt::json::array();
  for (const auto& a : agents) {
    ddt::json ja;
    ja["id"] = a.id;
    ja["speed"] = a.speed;
    for (int v = a.left; v <= a.right; ++v) ja["vertices"].push_back("x" + std::to_string(v));
    j["agents"].push_back(ja);
  }
  return ddt::instance_from_json(j);
}

inline ddt::Time t(const std::string& s) { return ddt::Time::parse(s); }

}  // namespace testing_ddt
