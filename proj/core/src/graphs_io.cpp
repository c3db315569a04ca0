#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "knotfoam/errors.hpp"
#include "knotfoam/graphs.hpp"

namespace knotfoam {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& what) { fail(ErrorKind::MalformedGraph, "schema: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing '") + key + "'");
  return j.at(key);
}

int count_field(const json& j, const char* key) {
  if (!j.contains(key)) return 0;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long>() < 0) schema(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<int>();
}

}  // namespace

TrivalentGraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
  if (!j.is_object()) schema("top level must be an object");
  TrivalentGraph g;
  g.blue_circles = count_field(j, "blue_circles");
  g.red_circles = count_field(j, "red_circles");
  std::map<std::string, int> he;
  const json& vertices = j.contains("vertices") ? j.at("vertices") : json::array();
  if (!vertices.is_array()) schema("'vertices' must be an array");
  for (const json& v : vertices) {
    const json& rot = field(v, "rotation");
    if (!rot.is_array() || rot.size() != 3) schema("rotation must list three half-edges");
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) {
      if (!rot[i].is_string()) schema("half-edge names must be strings");
      std::string name = rot[i].get<std::string>();
      if (he.count(name)) schema("half-edge '" + name + "' appears at two vertices");
      int h = static_cast<int>(g.half_edges.size());
      he[name] = h;
      HalfEdge e;
      e.vertex = static_cast<int>(g.rotation.size());
      g.half_edges.push_back(e);
      r[i] = h;
    }
    g.rotation.push_back(r);
  }
  const json& edges = j.contains("edges") ? j.at("edges") : json::array();
  if (!edges.is_array()) schema("'edges' must be an array");
  for (const json& e : edges) {
    const json& color = field(e, "color");
    if (!color.is_string() || (color != "blue" && color != "red")) schema("edge color must be blue or red");
    bool red = color == "red";
    const json& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
      schema("edge ends must be two half-edge names");
    int h[2];
    for (int i = 0; i < 2; ++i) {
      auto it = he.find(ends[i].get<std::string>());
      if (it == he.end()) schema("edge references unknown half-edge '" + ends[i].get<std::string>() + "'");
      h[i] = it->second;
      if (g.half_edges[h[i]].twin >= 0) schema("half-edge '" + it->first + "' used by two edges");
    }
    if (h[0] == h[1]) schema("edge joins a half-edge to itself");
    g.half_edges[h[0]].twin = h[1];
    g.half_edges[h[1]].twin = h[0];
    for (int i = 0; i < 2; ++i) {
      g.half_edges[h[i]].red = red;
      g.half_edges[h[i]].red_out = red && i == 0;
    }
  }
  for (const auto& [name, h] : he)
    if (g.half_edges[h].twin < 0) schema("half-edge '" + name + "' is not on any edge");
  validate_graph(g);
  return g;
}

std::string graph_to_json(const TrivalentGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < g.rotation.size(); ++v) {
    json r = json::array();
    for (int h : g.rotation[v]) r.push_back("h" + std::to_string(h));
    j["vertices"].push_back({{"id", "v" + std::to_string(v)}, {"rotation", r}});
  }
  j["edges"] = json::array();
  int count = 0;
  for (std::size_t h = 0; h < g.half_edges.size(); ++h) {
    const HalfEdge& e = g.half_edges[h];
    int t = e.twin;
    bool first = e.red ? e.red_out : static_cast<int>(h) < t;
    if (!first) continue;
    j["edges"].push_back({{"id", "e" + std::to_string(count++)},
                          {"color", e.red ? "red" : "blue"},
                          {"ends", {"h" + std::to_string(h), "h" + std::to_string(t)}}});
  }
  j["blue_circles"] = g.blue_circles;
  j["red_circles"] = g.red_circles;
  return j.dump(2);
}

TrivalentGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json(ss.str());
}

}  // namespace knotfoam
