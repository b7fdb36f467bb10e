#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "model.hpp"
#include "schedule.hpp"

namespace ddt {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string id_text(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError(std::string("expected string or integer id for ") + what);
}

inline Rational rational_of(const json& j, const char* what) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return Rational::parse(j.dump());
  throw ParseError(std::string("expected rational for ") + what);
}

inline const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace detail

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  Instance inst;
  for (const auto& v : detail::field(j, "vertices")) inst.graph.add_vertex(detail::id_text(v, "vertex"));
  for (const auto& e : detail::field(j, "edges")) {
    int u = inst.graph.at(detail::id_text(detail::field(e, "u"), "edge endpoint"));
    int v = inst.graph.at(detail::id_text(detail::field(e, "v"), "edge endpoint"));
    inst.graph.add_edge(u, v, detail::rational_of(detail::field(e, "len"), "edge length"));
  }
  inst.source = inst.graph.at(detail::id_text(detail::field(j, "source"), "source"));
  inst.target = inst.graph.at(detail::id_text(detail::field(j, "target"), "target"));
  for (const auto& ja : detail::field(j, "agents")) {
    Agent a;
    a.id = detail::id_text(detail::field(ja, "id"), "agent id");
    a.speed = detail::rational_of(detail::field(ja, "speed"), "speed");
    for (const auto& v : detail::field(ja, "vertices")) a.vertices.push_back(inst.graph.at(detail::id_text(v, "vertex")));
    if (ja.contains("edges") && !ja["edges"].is_null()) {
      a.explicit_edges = true;
      for (const auto& e : ja["edges"]) {
        if (!e.is_array() || e.size() != 2) throw ParseError("agent edge must be a pair");
        a.edges.emplace_back(inst.graph.at(detail::id_text(e[0], "vertex")), inst.graph.at(detail::id_text(e[1], "vertex")));
      }
    }
    if (ja.contains("start") && !ja["start"].is_null()) a.start = inst.graph.at(detail::id_text(ja["start"], "start"));
    normalize_agent(inst.graph, a);
    inst.agents.push_back(std::move(a));
  }
  validate_instance(inst);
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  return instance_from_json(j);
}

inline json instance_to_json(const Instance& inst) {
  const Graph& g = inst.graph;
  json j;
  j["vertices"] = g.names();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"u", g.name(e.u)}, {"v", g.name(e.v)}, {"len", e.len.str()}});
  j["edges"] = edges;
  j["source"] = g.name(inst.source);
  j["target"] = g.name(inst.target);
  json agents = json::array();
  for (const Agent& a : inst.agents) {
    json ja;
    ja["id"] = a.id;
    ja["speed"] = a.speed.str();
    json vs = json::array();
    for (int v : a.vertices) vs.push_back(g.name(v));
    ja["vertices"] = vs;
    if (a.explicit_edges) {
      json es = json::array();
      for (auto [u, v] : a.edges) es.push_back({g.name(u), g.name(v)});
      ja["edges"] = es;
    }
    if (a.start) ja["start"] = g.name(*a.start);
    agents.push_back(ja);
  }
  j["agents"] = agents;
  return j;
}

inline std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline json schedule_to_json(const Instance& inst, const Schedule& s) {
  const Graph& g = inst.graph;
  json j;
  json starts = json::object();
  json trips = json::object();
  for (int a = 0; a < inst.k(); ++a) {
    if (s.start_positions[a]) starts[inst.agents[a].id] = g.name(*s.start_positions[a]);
    if (s.agent_trips[a].empty()) continue;
    json list = json::array();
    for (const AgentTrip& t : s.agent_trips[a]) list.push_back({g.name(t.u), g.name(t.v), t.tau.str()});
    trips[inst.agents[a].id] = list;
  }
  json pk = json::array();
  for (const PackageTrip& p : s.package_trips) {
    pk.push_back({g.name(p.u), g.name(p.v), inst.agents[p.agent].id, p.tau.str()});
  }
  j["start_positions"] = starts;
  j["agent_trips"] = trips;
  j["package_trips"] = pk;
  return j;
}

inline Schedule schedule_from_json(const Instance& inst, const json& j) {
  const Graph& g = inst.graph;
  Schedule s = Schedule::empty(inst);
  if (j.contains("start_positions")) {
    for (const auto& [id, v] : j["start_positions"].items()) {
      s.start_positions[inst.agent_index(id)] = g.at(detail::id_text(v, "start position"));
    }
  }
  if (j.contains("agent_trips")) {
    for (const auto& [id, list] : j["agent_trips"].items()) {
      int a = inst.agent_index(id);
      for (const auto& t : list) {
        if (!t.is_array() || t.size() != 3) throw ParseError("agent trip must be [u, v, tau]");
        s.agent_trips[a].push_back({g.at(detail::id_text(t[0], "vertex")), g.at(detail::id_text(t[1], "vertex")),
                                    detail::rational_of(t[2], "tau")});
      }
    }
  }
  for (const auto& p : detail::field(j, "package_trips")) {
    if (!p.is_array() || p.size() != 4) throw ParseError("package trip must be [u, v, agent, tau]");
    s.package_trips.push_back({g.at(detail::id_text(p[0], "vertex")), g.at(detail::id_text(p[1], "vertex")),
                               inst.agent_index(detail::id_text(p[2], "agent")), detail::rational_of(p[3], "tau")});
  }
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

}  // namespace ddt
