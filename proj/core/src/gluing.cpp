#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "knotfoam/errors.hpp"
#include "knotfoam/foam.hpp"

namespace knotfoam {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::MalformedFoam, what); }

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string edge_name(const FreeEdge& e) { return e.edge.empty() ? e.slot : e.edge; }

}  // namespace

ClosedFoam glue(const OpenFoam& piece, const OpenFoam& context) {
  validate_foam(piece);
  validate_foam(context);
  if (boundary_signature(piece) != boundary_signature(context))
    malformed("boundary signatures differ; cannot glue");

  // Combined facet table with prefixed ids.
  std::vector<Facet> facets;
  std::unordered_map<std::string, int> slot_owner;
  auto add_side = [&](const OpenFoam& f, const std::string& prefix) {
    for (const Facet& F : f.facets) {
      Facet G = F;
      G.id = prefix + F.id;
      for (auto& s : G.slots) {
        s = prefix + s;
        slot_owner[s] = static_cast<int>(facets.size());
      }
      facets.push_back(std::move(G));
    }
  };
  add_side(piece, "a:");
  add_side(context, "b:");

  Dsu dsu(static_cast<int>(facets.size()));
  std::unordered_map<std::string, const FreeEdge*> ctx_edges;
  for (const FreeEdge& e : context.free_boundary) ctx_edges[edge_name(e)] = &e;
  std::vector<int> glued_arcs(facets.size(), 0);
  std::set<std::string> consumed_slots;
  std::vector<std::pair<int, int>> arc_pairs;
  for (const FreeEdge& e : piece.free_boundary) {
    const FreeEdge& o = *ctx_edges.at(edge_name(e));
    int a = slot_owner.at("a:" + e.slot), b = slot_owner.at("b:" + o.slot);
    dsu.unite(a, b);
    consumed_slots.insert("a:" + e.slot);
    consumed_slots.insert("b:" + o.slot);
    if (e.is_arc()) arc_pairs.emplace_back(a, b);
  }
  for (const auto& [a, b] : arc_pairs) ++glued_arcs[dsu.find(a)];

  // Binding arcs join into circles through the boundary vertices.
  std::vector<Binding> arcs, circles;
  for (const auto& [f, prefix] : {std::pair<const OpenFoam*, std::string>{&piece, "a:"}, {&context, "b:"}}) {
    for (const Binding& b : f->bindings) {
      Binding c = b;
      c.id = prefix + b.id;
      for (auto& s : c.blue_pages) s = prefix + s;
      c.red_page = prefix + c.red_page;
      (b.is_arc() ? arcs : circles).push_back(std::move(c));
      if (b.is_arc())
        for (const auto& s : {b.blue_pages[0], b.blue_pages[1], b.red_page}) consumed_slots.insert(prefix + s);
    }
  }
  std::unordered_map<std::string, std::vector<int>> at_vertex;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (const auto& v : arcs[i].ends) at_vertex[v].push_back(static_cast<int>(i));
  for (const auto& [v, list] : at_vertex)
    if (list.size() != 2) malformed("boundary vertex " + v + " is not shared by exactly two binding arcs");

  auto merged = [&](const std::string& slot) { return dsu.find(slot_owner.at(slot)); };

  std::vector<std::vector<std::string>> new_slots(facets.size());
  std::vector<bool> used(arcs.size(), false);
  for (std::size_t start = 0; start < arcs.size(); ++start) {
    if (used[start]) continue;
    std::vector<int> cycle;
    int cur = static_cast<int>(start);
    std::string v = arcs[start].ends[1];
    while (!used[cur]) {
      used[cur] = true;
      cycle.push_back(cur);
      const auto& pair = at_vertex.at(v);
      int next = pair[0] == cur ? pair[1] : pair[0];
      const Binding& nb = arcs[next];
      v = nb.ends[0] == v ? nb.ends[1] : nb.ends[0];
      cur = next;
    }
    const Binding& first = arcs[cycle.front()];
    const int p1 = merged(first.blue_pages[0]), p2 = merged(first.blue_pages[1]), r = merged(first.red_page);
    std::string id = "g:";
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Binding& b = arcs[cycle[k]];
      if (merged(b.red_page) != r) malformed("red page changes along glued binding through " + b.id);
      if (merged(b.blue_pages[0]) != p1 || merged(b.blue_pages[1]) != p2)
        malformed("page order flips across a boundary vertex at binding " + b.id);
      id += (k ? "," : "") + b.id;
    }
    Binding circle;
    circle.id = id;
    circle.blue_pages = {id + "#1", id + "#2"};
    circle.red_page = id + "#r";
    new_slots[p1].push_back(circle.blue_pages[0]);
    new_slots[p2].push_back(circle.blue_pages[1]);
    new_slots[r].push_back(circle.red_page);
    circles.push_back(std::move(circle));
  }

  // Merge facets group by group, in order of their smallest member.
  ClosedFoam out;
  std::vector<int> root_to_out(facets.size(), -1);
  std::vector<long> chi(facets.size(), 0);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    int r = dsu.find(static_cast<int>(i));
    const Facet& F = facets[i];
    chi[r] += F.euler();
    if (root_to_out[r] < 0) {
      root_to_out[r] = static_cast<int>(out.facets.size());
      Facet G;
      G.id = F.id;
      G.color = F.color;
      out.facets.push_back(G);
    } else {
      Facet& G = out.facets[root_to_out[r]];
      if (G.color != F.color) malformed("gluing joins a blue and a red facet at " + F.id);
      G.id += "+" + F.id;
    }
    Facet& G = out.facets[root_to_out[r]];
    G.dots += F.dots;
    G.squares += F.squares;
    for (const auto& s : F.slots)
      if (!consumed_slots.count(s)) G.slots.push_back(s);
  }
  for (std::size_t r = 0; r < facets.size(); ++r) {
    if (root_to_out[r] < 0) continue;
    Facet& G = out.facets[root_to_out[r]];
    for (const auto& s : new_slots[r]) G.slots.push_back(s);
    const long total = chi[r] - glued_arcs[r];
    const long twice_genus = 2 - total - static_cast<long>(G.slots.size());
    if (twice_genus < 0 || twice_genus % 2 != 0)
      malformed("glued facet " + G.id + " has inconsistent Euler characteristic " + std::to_string(total));
    G.genus = static_cast<int>(twice_genus / 2);
  }
  out.bindings = std::move(circles);
  validate_foam(out);
  return out;
}

ClosedFoam cap_closure(const OpenFoam& f, const std::map<std::string, int>& caps) {
  OpenFoam ctx;
  std::set<std::string> known;
  for (const FreeEdge& e : f.free_boundary) {
    const std::string name = edge_name(e);
    if (e.is_arc()) malformed("free edge " + name + " is an arc; caps close circles only");
    auto it = caps.find(name);
    const int dots = it == caps.end() ? 0 : it->second;
    if (dots < 0) malformed("negative cap decoration on " + name);
    if (e.color == Color::Red && dots != 0) malformed("red cap " + name + " cannot carry dots");
    known.insert(name);
    Facet cap;
    cap.id = "cap:" + name;
    cap.color = e.color;
    cap.dots = dots;
    cap.slots = {"cap:" + name};
    ctx.facets.push_back(cap);
    ctx.free_boundary.push_back(FreeEdge{cap.slots[0], e.color, name, {}});
  }
  for (const auto& [name, d] : caps)
    if (!known.count(name)) malformed("cap given for unknown free edge " + name);
  return glue(f, ctx);
}

namespace {

IntPoly2 side_value(const FoamCombination& side, const OpenFoam& ctx) {
  IntPoly2 sum;
  for (const FoamTerm& t : side.terms) {
    if (t.coeff.is_zero()) continue;
    sum += t.coeff * evaluate_foam(glue(t.foam, ctx));
  }
  return sum;
}

IntPoly2 side_value_caps(const FoamCombination& side, const std::map<std::string, int>& caps) {
  IntPoly2 sum;
  for (const FoamTerm& t : side.terms) {
    if (t.coeff.is_zero()) continue;
    sum += t.coeff * evaluate_foam(cap_closure(t.foam, caps));
  }
  return sum;
}

// Odometer over count digits in 0..max; returns false after the last one.
bool advance(std::vector<int>& digits, int max) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < max) {
      ++digits[i];
      return true;
    }
    digits[i] = 0;
  }
  return false;
}

}  // namespace

RelationCheck verify_local_relation(const FoamCombination& lhs, const FoamCombination& rhs, int max_dots,
                                    const std::vector<OpenFoam>& extra_contexts) {
  if (max_dots < 0) throw std::invalid_argument("max_dots must be nonnegative");
  std::vector<const OpenFoam*> all_terms;
  for (const auto* side : {&lhs, &rhs})
    for (const FoamTerm& t : side->terms) all_terms.push_back(&t.foam);
  if (all_terms.empty()) return {};
  const OpenFoam& ref = *all_terms.front();
  const auto sig = boundary_signature(ref);
  for (const OpenFoam* f : all_terms) {
    validate_foam(*f);
    if (boundary_signature(*f) != sig) malformed("terms of a relation have different boundaries");
  }

  RelationCheck result;
  auto compare = [&](const std::string& name, const IntPoly2& l, const IntPoly2& r) {
    ++result.closures;
    if (l != r && result.pass) {
      result.pass = false;
      result.witness = RelationWitness{name, l, r};
    }
  };

  const bool circles_only =
      std::none_of(ref.free_boundary.begin(), ref.free_boundary.end(), [](const FreeEdge& e) { return e.is_arc(); });
  if (circles_only) {
    std::vector<std::string> blue_edges;
    for (const FreeEdge& e : ref.free_boundary)
      if (e.color == Color::Blue) blue_edges.push_back(edge_name(e));
    std::sort(blue_edges.begin(), blue_edges.end());
    std::vector<int> digits(blue_edges.size(), 0);
    do {
      std::map<std::string, int> caps;
      std::string name = "caps{";
      for (std::size_t i = 0; i < blue_edges.size(); ++i) {
        caps[blue_edges[i]] = digits[i];
        name += (i ? "," : "") + blue_edges[i] + "=" + std::to_string(digits[i]);
      }
      name += "}";
      compare(name, side_value_caps(lhs, caps), side_value_caps(rhs, caps));
      if (!result.pass) return result;
    } while (advance(digits, max_dots));
  }
  if (ref.free_boundary.empty()) return result;

  std::vector<std::pair<std::string, OpenFoam>> contexts;
  std::set<std::string> seen;
  int index = 0;
  for (const auto* side : {&lhs, &rhs}) {
    for (const FoamTerm& t : side->terms) {
      const std::string label = std::string(side == &lhs ? "lhs" : "rhs") + "[" + std::to_string(index++) + "]";
      if (seen.insert(foam_to_json(t.foam)).second) contexts.emplace_back(label, t.foam);
    }
    index = 0;
  }
  for (std::size_t i = 0; i < extra_contexts.size(); ++i)
    contexts.emplace_back("context[" + std::to_string(i) + "]", extra_contexts[i]);

  for (const auto& [label, base] : contexts) {
    if (boundary_signature(base) != sig) malformed("context " + label + " does not match the relation boundary");
    std::vector<std::size_t> blue;
    for (std::size_t i = 0; i < base.facets.size(); ++i)
      if (base.facets[i].color == Color::Blue) blue.push_back(i);
    std::vector<int> digits(blue.size(), 0);
    do {
      OpenFoam ctx = base;
      std::string name = label + "+dots{";
      for (std::size_t i = 0; i < blue.size(); ++i) {
        ctx.facets[blue[i]].dots += digits[i];
        name += (i ? "," : "") + base.facets[blue[i]].id + "=" + std::to_string(digits[i]);
      }
      name += "}";
      compare(name, side_value(lhs, ctx), side_value(rhs, ctx));
      if (!result.pass) return result;
    } while (advance(digits, max_dots));
  }
  return result;
}

}  // namespace knotfoam
