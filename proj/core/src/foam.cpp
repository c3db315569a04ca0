#include "knotfoam/foam.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "knotfoam/errors.hpp"

namespace knotfoam {

const char* color_name(Color c) { return c == Color::Blue ? "blue" : "red"; }

OpenFoam to_open(const ClosedFoam& f) { return OpenFoam{f.facets, f.bindings, {}}; }

ClosedFoam to_closed(const OpenFoam& f) {
  if (!f.free_boundary.empty()) fail(ErrorKind::MalformedFoam, "foam has free boundary");
  return ClosedFoam{f.facets, f.bindings};
}

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::MalformedFoam, what); }

struct SlotUse {
  int circle_bindings = 0;
  int free_loops = 0;
  std::vector<const Binding*> arcs;
  std::vector<const FreeEdge*> free_arcs;
};

void validate_impl(const std::vector<Facet>& facets, const std::vector<Binding>& bindings,
                   const std::vector<FreeEdge>& free) {
  std::unordered_map<std::string, const Facet*> slot_owner;
  std::set<std::string> facet_ids;
  for (const Facet& F : facets) {
    if (F.id.empty()) malformed("facet with empty id");
    if (!facet_ids.insert(F.id).second) malformed("duplicate facet id " + F.id);
    if (F.genus < 0 || F.dots < 0 || F.squares < 0) malformed("negative genus or decoration on " + F.id);
    if (F.color == Color::Blue && F.squares != 0) malformed("squares on blue facet " + F.id);
    for (const std::string& s : F.slots)
      if (!slot_owner.emplace(s, &F).second) malformed("slot " + s + " listed twice");
  }

  std::unordered_map<std::string, SlotUse> use;
  auto owner = [&](const std::string& slot, Color want, const std::string& who) -> const Facet* {
    auto it = slot_owner.find(slot);
    if (it == slot_owner.end()) malformed(who + " references missing slot " + slot);
    if (it->second->color != want)
      malformed(who + " expects a " + color_name(want) + " facet at slot " + slot);
    return it->second;
  };

  std::set<std::string> binding_ids;
  std::unordered_map<std::string, int> vertex_binding_ends;
  for (const Binding& b : bindings) {
    if (!binding_ids.insert(b.id).second) malformed("duplicate binding id " + b.id);
    if (b.blue_pages[0] == b.blue_pages[1]) malformed("binding " + b.id + " uses one slot for both blue pages");
    owner(b.blue_pages[0], Color::Blue, "binding " + b.id);
    owner(b.blue_pages[1], Color::Blue, "binding " + b.id);
    owner(b.red_page, Color::Red, "binding " + b.id);
    if (b.ends.empty()) {
      for (const std::string& s : {b.blue_pages[0], b.blue_pages[1], b.red_page}) ++use[s].circle_bindings;
    } else {
      if (b.ends.size() != 2 || b.ends[0] == b.ends[1]) malformed("binding arc " + b.id + " needs two distinct ends");
      for (const std::string& s : {b.blue_pages[0], b.blue_pages[1], b.red_page}) use[s].arcs.push_back(&b);
      for (const std::string& v : b.ends) ++vertex_binding_ends[v];
    }
  }

  std::set<std::string> edge_ids;
  std::unordered_map<std::string, std::array<int, 2>> vertex_free_ends;  // blue, red
  for (const FreeEdge& e : free) {
    const std::string name = e.edge.empty() ? e.slot : e.edge;
    if (!edge_ids.insert(name).second) malformed("duplicate free edge " + name);
    owner(e.slot, e.color, "free edge " + name);
    if (e.ends.empty()) {
      ++use[e.slot].free_loops;
    } else {
      if (e.ends.size() != 2 || e.ends[0] == e.ends[1]) malformed("free arc " + name + " needs two distinct ends");
      use[e.slot].free_arcs.push_back(&e);
      for (const std::string& v : e.ends) ++vertex_free_ends[v][e.color == Color::Blue ? 0 : 1];
    }
  }

  for (const auto& [slot, F] : slot_owner) {
    const SlotUse& u = use[slot];
    const int kinds = (u.circle_bindings > 0) + (u.free_loops > 0) + (!u.arcs.empty() || !u.free_arcs.empty());
    if (kinds == 0) malformed("dangling slot " + slot);
    if (kinds > 1) malformed("slot " + slot + " mixes circle and arc boundary");
    if (u.circle_bindings > 1 || u.free_loops > 1) malformed("slot " + slot + " used more than once");
    if (u.arcs.empty() && u.free_arcs.empty()) continue;
    // The arcs on one slot must alternate around a single circle.
    if (u.arcs.size() != u.free_arcs.size()) malformed("slot " + slot + " does not alternate binding and free arcs");
    std::unordered_map<std::string, std::array<int, 2>> deg;
    std::unordered_map<std::string, std::vector<std::string>> adj;
    auto link = [&](const std::string& a, const std::string& b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    };
    for (const Binding* b : u.arcs) {
      for (const auto& v : b->ends) ++deg[v][0];
      link(b->ends[0], b->ends[1]);
    }
    for (const FreeEdge* e : u.free_arcs) {
      for (const auto& v : e->ends) ++deg[v][1];
      link(e->ends[0], e->ends[1]);
    }
    for (const auto& [v, d] : deg)
      if (d[0] != 1 || d[1] != 1) malformed("slot " + slot + " boundary is not a circle at vertex " + v);
    std::set<std::string> seen;
    std::vector<std::string> stack{deg.begin()->first};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      for (const auto& w : adj[v]) stack.push_back(w);
    }
    if (seen.size() != deg.size()) malformed("slot " + slot + " boundary splits into several circles");
  }

  for (const auto& [v, n] : vertex_binding_ends) {
    auto it = vertex_free_ends.find(v);
    if (n != 1 || it == vertex_free_ends.end() || it->second[0] != 2 || it->second[1] != 1)
      malformed("boundary vertex " + v + " is not trivalent with two blue and one red edge");
  }
  for (const auto& [v, d] : vertex_free_ends)
    if (!vertex_binding_ends.count(v)) malformed("boundary vertex " + v + " has no binding arc");
}

// Index of each blue facet plus page adjacency over bindings.
struct BlueGraph {
  std::vector<int> blue;                      // facet indices of blue facets
  std::unordered_map<std::string, int> slot;  // slot -> facet index
  std::vector<std::vector<int>> adj;          // over facet indices
};

BlueGraph blue_graph(const ClosedFoam& f) {
  BlueGraph g;
  g.adj.resize(f.facets.size());
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    if (f.facets[i].color == Color::Blue) g.blue.push_back(static_cast<int>(i));
    for (const auto& s : f.facets[i].slots) g.slot[s] = static_cast<int>(i);
  }
  for (const Binding& b : f.bindings) {
    int a = g.slot.at(b.blue_pages[0]), c = g.slot.at(b.blue_pages[1]);
    g.adj[a].push_back(c);
    g.adj[c].push_back(a);
  }
  return g;
}

// Base 2-coloring (first facet of each component gets 1) and component ids.
struct BaseColoring {
  std::vector<int> color;      // per facet index, 0 for red
  std::vector<int> component;  // per facet index, -1 for red
  int components = 0;
};

BaseColoring base_coloring(const ClosedFoam& f) {
  BlueGraph g = blue_graph(f);
  BaseColoring bc;
  bc.color.assign(f.facets.size(), 0);
  bc.component.assign(f.facets.size(), -1);
  for (int start : g.blue) {
    if (bc.color[start]) continue;
    const int comp = bc.components++;
    bc.color[start] = 1;
    bc.component[start] = comp;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v]) {
        if (w == v) fail(ErrorKind::NonBipartiteBinding, "facet " + f.facets[v].id + " is both pages of a binding");
        if (!bc.color[w]) {
          bc.color[w] = 3 - bc.color[v];
          bc.component[w] = comp;
          stack.push_back(w);
        } else if (bc.color[w] == bc.color[v]) {
          fail(ErrorKind::NonBipartiteBinding, "odd cycle through facets " + f.facets[v].id + " and " + f.facets[w].id);
        }
      }
    }
  }
  return bc;
}

std::vector<int> coloring_vector(const ClosedFoam& f, const Coloring& c) {
  std::vector<int> col(f.facets.size(), 0);
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    if (f.facets[i].color != Color::Blue) continue;
    auto it = c.assignment.find(f.facets[i].id);
    if (it == c.assignment.end() || (it->second != 1 && it->second != 2))
      fail(ErrorKind::MalformedFoam, "coloring misses blue facet " + f.facets[i].id);
    col[i] = it->second;
  }
  return col;
}

struct FacetIndex {
  std::unordered_map<std::string, int> slot;
};

long chi_from(const ClosedFoam& f, const std::vector<int>& col, Subsurface which) {
  long chi = 0;
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    const Facet& F = f.facets[i];
    if (which == Subsurface::SigmaB ? F.color == Color::Blue : (F.color == Color::Red || col[i] == 1))
      chi += F.euler();
  }
  if (chi % 2 != 0) fail(ErrorKind::OddEuler, "subsurface Euler characteristic " + std::to_string(chi));
  return chi;
}

int n12_from(const ClosedFoam& f, const std::unordered_map<std::string, int>& slot, const std::vector<int>& col) {
  int n = 0;
  for (const Binding& b : f.bindings) {
    int c0 = col[slot.at(b.blue_pages[0])], c1 = col[slot.at(b.blue_pages[1])];
    if (c0 == c1) fail(ErrorKind::MalformedFoam, "binding " + b.id + " has equal colors on its blue pages");
    if (c0 == 1 && c1 == 2) ++n;
  }
  return n;
}

}  // namespace

void validate_foam(const ClosedFoam& f) { validate_impl(f.facets, f.bindings, {}); }

void validate_foam(const OpenFoam& f) { validate_impl(f.facets, f.bindings, f.free_boundary); }

std::vector<std::vector<std::string>> blue_components(const ClosedFoam& f) {
  BlueGraph g = blue_graph(f);
  std::vector<int> comp(f.facets.size(), -1);
  std::vector<std::vector<std::string>> out;
  for (int start : g.blue) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v])
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
  }
  for (int i : g.blue) out[comp[i]].push_back(f.facets[i].id);
  return out;
}

std::vector<Coloring> enumerate_colorings(const ClosedFoam& f) {
  BaseColoring bc = base_coloring(f);
  std::vector<Coloring> out;
  const unsigned long total = 1ul << bc.components;
  out.reserve(total);
  for (unsigned long mask = 0; mask < total; ++mask) {
    Coloring c;
    for (std::size_t i = 0; i < f.facets.size(); ++i) {
      if (f.facets[i].color != Color::Blue) continue;
      int col = bc.color[i];
      if (mask >> bc.component[i] & 1ul) col = 3 - col;
      c.assignment[f.facets[i].id] = col;
    }
    out.push_back(std::move(c));
  }
  return out;
}

long chi_subsurface(const ClosedFoam& f, const Coloring& c, Subsurface which) {
  return chi_from(f, coloring_vector(f, c), which);
}

int count_n12(const ClosedFoam& f, const Coloring& c) {
  std::unordered_map<std::string, int> slot;
  for (std::size_t i = 0; i < f.facets.size(); ++i)
    for (const auto& s : f.facets[i].slots) slot[s] = static_cast<int>(i);
  return n12_from(f, slot, coloring_vector(f, c));
}

IntPoly2 evaluate_foam(const ClosedFoam& f) {
  BaseColoring bc = base_coloring(f);
  std::unordered_map<std::string, int> slot;
  IntPoly2 red_factor(1);
  for (std::size_t i = 0; i < f.facets.size(); ++i) {
    const Facet& F = f.facets[i];
    for (const auto& s : F.slots) slot[s] = static_cast<int>(i);
    if (F.color == Color::Red)
      red_factor *= IntPoly2::e1().pow(static_cast<unsigned>(F.dots)) * IntPoly2::e2().pow(static_cast<unsigned>(F.squares));
  }
  const long chi_b = chi_from(f, bc.color, Subsurface::SigmaB);

  IntPoly2 numerator;
  std::vector<int> col(f.facets.size());
  const unsigned long total = 1ul << bc.components;
  for (unsigned long mask = 0; mask < total; ++mask) {
    unsigned d1 = 0, d2 = 0;
    for (std::size_t i = 0; i < f.facets.size(); ++i) {
      if (f.facets[i].color != Color::Blue) {
        col[i] = 0;
        continue;
      }
      col[i] = (mask >> bc.component[i] & 1ul) ? 3 - bc.color[i] : bc.color[i];
      (col[i] == 1 ? d1 : d2) += static_cast<unsigned>(f.facets[i].dots);
    }
    const long chi1 = chi_from(f, col, Subsurface::Sigma1);
    const int n12 = n12_from(f, slot, col);
    const long exponent = chi1 / 2 + n12;
    const bool negative = ((exponent % 2) + 2) % 2 == 1;
    numerator += IntPoly2::monomial(negative ? -1 : 1, d1, d2);
  }
  return divide_by_difference_power(numerator, static_cast<int>(chi_b / 2)) * red_factor;
}

std::vector<std::string> boundary_signature(const OpenFoam& f) {
  std::vector<std::string> sig;
  for (const FreeEdge& e : f.free_boundary) {
    std::vector<std::string> ends = e.ends;
    std::sort(ends.begin(), ends.end());
    std::string s = (e.edge.empty() ? e.slot : e.edge) + "|" + color_name(e.color);
    for (const auto& v : ends) s += "|" + v;
    sig.push_back(s);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace knotfoam
