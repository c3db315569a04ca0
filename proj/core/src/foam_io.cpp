#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "knotfoam/errors.hpp"
#include "knotfoam/foam.hpp"

namespace knotfoam {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& what) { fail(ErrorKind::MalformedFoam, "schema: " + what); }

Color parse_color(const json& j) {
  if (!j.is_string()) schema("color must be a string");
  const std::string s = j.get<std::string>();
  if (s == "blue") return Color::Blue;
  if (s == "red") return Color::Red;
  schema("unknown color " + s);
}

std::string str(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) schema(std::string("missing string field ") + key);
  return j[key].get<std::string>();
}

int nonneg(const json& j, const char* key) {
  if (!j.contains(key)) return 0;
  if (!j[key].is_number_integer()) schema(std::string(key) + " must be an integer");
  return j[key].get<int>();
}

std::vector<std::string> strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) schema(std::string(key) + " must be an array");
  for (const auto& x : j[key]) {
    if (!x.is_string()) schema(std::string(key) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

OpenFoam foam_from(const json& j) {
  if (!j.is_object()) schema("foam must be an object");
  OpenFoam f;
  if (j.contains("facets")) {
    for (const auto& x : j["facets"]) {
      Facet F;
      F.id = str(x, "id");
      F.color = parse_color(x.value("color", json("blue")));
      F.genus = nonneg(x, "genus");
      F.dots = nonneg(x, "dots");
      F.squares = nonneg(x, "squares");
      F.slots = strings(x, "slots");
      f.facets.push_back(std::move(F));
    }
  }
  if (j.contains("bindings")) {
    for (const auto& x : j["bindings"]) {
      Binding b;
      b.id = str(x, "id");
      auto pages = strings(x, "blue_pages");
      if (pages.size() != 2) schema("binding " + b.id + " needs two blue pages");
      b.blue_pages = {pages[0], pages[1]};
      b.red_page = str(x, "red_page");
      b.ends = strings(x, "ends");
      f.bindings.push_back(std::move(b));
    }
  }
  if (j.contains("free_boundary")) {
    for (const auto& x : j["free_boundary"]) {
      FreeEdge e;
      e.slot = str(x, "slot");
      e.color = parse_color(x.value("color", json("blue")));
      e.edge = x.contains("edge") ? str(x, "edge") : e.slot;
      e.ends = strings(x, "ends");
      f.free_boundary.push_back(std::move(e));
    }
  }
  return f;
}

json foam_to(const OpenFoam& f) {
  json facets = json::array(), bindings = json::array(), free = json::array();
  for (const Facet& F : f.facets)
    facets.push_back({{"id", F.id}, {"color", color_name(F.color)}, {"genus", F.genus}, {"dots", F.dots},
                      {"squares", F.squares}, {"slots", F.slots}});
  for (const Binding& b : f.bindings) {
    json x = {{"id", b.id}, {"blue_pages", {b.blue_pages[0], b.blue_pages[1]}}, {"red_page", b.red_page}};
    if (b.is_arc()) x["ends"] = b.ends;
    bindings.push_back(x);
  }
  for (const FreeEdge& e : f.free_boundary) {
    json x = {{"slot", e.slot}, {"color", color_name(e.color)}};
    if (!e.edge.empty() && e.edge != e.slot) x["edge"] = e.edge;
    if (e.is_arc()) x["ends"] = e.ends;
    free.push_back(x);
  }
  return {{"facets", facets}, {"bindings", bindings}, {"free_boundary", free}};
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, "invalid JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FoamCombination combination_from(const json& j, const json& pieces) {
  FoamCombination c;
  if (!j.is_array()) schema("relation side must be an array");
  for (const auto& t : j) {
    FoamTerm term;
    if (t.contains("coeff")) {
      if (t["coeff"].is_number_integer()) term.coeff = IntPoly2(t["coeff"].get<long>());
      else if (t["coeff"].is_string()) term.coeff = IntPoly2::parse(t["coeff"].get<std::string>());
      else schema("coeff must be an integer or polynomial string");
    }
    if (t.contains("ref")) {
      const std::string name = t["ref"].get<std::string>();
      if (!pieces.contains(name)) schema("unknown piece " + name);
      term.foam = foam_from(pieces[name]);
    } else if (t.contains("foam")) {
      term.foam = foam_from(t["foam"]);
    } else {
      schema("term needs foam or ref");
    }
    c.terms.push_back(std::move(term));
  }
  return c;
}

}  // namespace

OpenFoam foam_from_json(const std::string& text) { return foam_from(parse_text(text)); }

std::string foam_to_json(const OpenFoam& f) { return foam_to(f).dump(); }

OpenFoam load_foam_file(const std::string& path) { return foam_from_json(read_file(path)); }

Relation relation_from_json(const std::string& text) {
  json j = parse_text(text);
  Relation r;
  r.name = str(j, "name");
  r.description = j.value("description", std::string());
  json pieces = j.value("pieces", json::object());
  if (!j.contains("lhs") || !j.contains("rhs")) schema("relation " + r.name + " needs lhs and rhs");
  r.lhs = combination_from(j["lhs"], pieces);
  r.rhs = combination_from(j["rhs"], pieces);
  if (j.contains("contexts"))
    for (const auto& c : j["contexts"])
      r.contexts.push_back(c.is_string() ? foam_from(pieces.at(c.get<std::string>())) : foam_from(c));
  return r;
}

std::string default_relations_dir() {
  if (const char* env = std::getenv("KNOTFOAM_RELATIONS")) return env;
  if (std::filesystem::is_directory(KNOTFOAM_RELATIONS_DIR)) return KNOTFOAM_RELATIONS_DIR;
  return KNOTFOAM_INSTALLED_RELATIONS_DIR;
}

std::vector<Relation> load_relations(const std::string& directory) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Relation> out;
  for (const auto& p : files) out.push_back(relation_from_json(read_file(p.string())));
  return out;
}

std::vector<Relation> relation_fixtures() { return load_relations(default_relations_dir()); }

}  // namespace knotfoam
