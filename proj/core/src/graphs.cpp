#include "knotfoam/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "knotfoam/errors.hpp"

namespace knotfoam {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::MalformedGraph, what); }

int rot_next(const TrivalentGraph& g, int h) {
  const auto& r = g.rotation[g.half_edges[h].vertex];
  for (int i = 0; i < 3; ++i)
    if (r[i] == h) return r[(i + 1) % 3];
  bad("half-edge missing from its vertex rotation");
}

int face_next(const TrivalentGraph& g, int h) { return rot_next(g, g.half_edges[h].twin); }

bool source(const TrivalentGraph& g, int v) {
  for (int h : g.rotation[v])
    if (g.half_edges[h].red) return g.half_edges[h].red_out;
  return false;
}

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Half-edge at v that is neither a nor b.
int third(const TrivalentGraph& g, int v, int a, int b) {
  for (int h : g.rotation[v])
    if (h != a && h != b) return h;
  fail(ErrorKind::InvalidFace, "vertex has no leg");
}

std::vector<std::vector<int>> face_walks(const TrivalentGraph& g) {
  std::vector<char> seen(g.half_edges.size(), 0);
  std::vector<std::vector<int>> walks;
  for (std::size_t h0 = 0; h0 < g.half_edges.size(); ++h0) {
    if (seen[h0]) continue;
    std::vector<int> walk;
    int h = static_cast<int>(h0);
    while (!seen[h]) {
      seen[h] = 1;
      walk.push_back(h);
      h = face_next(g, h);
    }
    walks.push_back(std::move(walk));
  }
  return walks;
}

std::optional<FaceKind> classify(const TrivalentGraph& g, const std::vector<int>& walk) {
  std::set<int> verts;
  for (int h : walk) verts.insert(g.half_edges[h].vertex);
  if (verts.size() != walk.size()) return std::nullopt;
  std::vector<bool> red;
  for (int h : walk) red.push_back(g.half_edges[h].red);
  int reds = static_cast<int>(std::count(red.begin(), red.end(), true));
  if (walk.size() == 2) return reds == 0 ? FaceKind::CentralBigon : FaceKind::SideBigon;
  if (walk.size() == 4) {
    if (reds == 1) return FaceKind::SquareTwo;
    if (reds == 2 && red[0] == red[2]) return FaceKind::SquareOne;
  }
  return std::nullopt;
}

// Joins the outer ends of the legs h1 and h2 into one edge; when the legs are
// the two ends of one edge the strand closes into a circle.
void join(TrivalentGraph& g, int h1, int h2) {
  int f1 = g.half_edges[h1].twin;
  int f2 = g.half_edges[h2].twin;
  if (f1 == h2) {
    (g.half_edges[h1].red ? g.red_circles : g.blue_circles)++;
    return;
  }
  g.half_edges[f1].twin = f2;
  g.half_edges[f2].twin = f1;
}

TrivalentGraph drop_vertices(const TrivalentGraph& g, const std::set<int>& removed) {
  TrivalentGraph out;
  out.blue_circles = g.blue_circles;
  out.red_circles = g.red_circles;
  std::vector<int> vmap(g.rotation.size(), -1), hmap(g.half_edges.size(), -1);
  for (std::size_t v = 0; v < g.rotation.size(); ++v) {
    if (removed.count(static_cast<int>(v))) continue;
    vmap[v] = static_cast<int>(out.rotation.size());
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) {
      int h = g.rotation[v][i];
      hmap[h] = static_cast<int>(out.half_edges.size());
      HalfEdge e = g.half_edges[h];
      e.vertex = vmap[v];
      out.half_edges.push_back(e);
      r[i] = hmap[h];
    }
    out.rotation.push_back(r);
  }
  for (auto& e : out.half_edges) {
    e.twin = hmap[e.twin];
    if (e.twin < 0) fail(ErrorKind::InvalidFace, "reduction left a dangling half-edge");
  }
  return out;
}

}  // namespace

int TrivalentGraph::red_edge_count() const {
  int n = 0;
  for (const auto& h : half_edges)
    if (h.red && h.red_out) ++n;
  return n;
}

const char* face_kind_name(FaceKind k) {
  switch (k) {
    case FaceKind::CentralBigon: return "central-bigon";
    case FaceKind::SideBigon: return "side-bigon";
    case FaceKind::SquareOne: return "square-one";
    case FaceKind::SquareTwo: return "square-two";
    case FaceKind::RedCircle: return "red-circle";
  }
  return "unknown";
}

void validate_graph(const TrivalentGraph& g) {
  if (g.blue_circles < 0 || g.red_circles < 0) bad("negative circle count");
  std::size_t nh = g.half_edges.size();
  if (nh != 3 * g.rotation.size()) bad("half-edge count is not three per vertex");
  std::vector<int> owner(nh, -1);
  for (std::size_t v = 0; v < g.rotation.size(); ++v) {
    int reds = 0;
    for (int h : g.rotation[v]) {
      if (h < 0 || static_cast<std::size_t>(h) >= nh) bad("rotation references a missing half-edge");
      if (owner[h] >= 0) bad("half-edge listed twice in rotations");
      owner[h] = static_cast<int>(v);
      if (g.half_edges[h].vertex != static_cast<int>(v)) bad("half-edge vertex disagrees with rotation");
      if (g.half_edges[h].red) ++reds;
    }
    if (reds != 1) bad("vertex " + std::to_string(v) + " must have exactly one red half-edge");
  }
  for (std::size_t h = 0; h < nh; ++h) {
    const HalfEdge& e = g.half_edges[h];
    if (e.twin < 0 || static_cast<std::size_t>(e.twin) >= nh || e.twin == static_cast<int>(h))
      bad("half-edge has no partner");
    const HalfEdge& t = g.half_edges[e.twin];
    if (t.twin != static_cast<int>(h)) bad("twin pairing is not an involution");
    if (t.red != e.red) bad("edge joins half-edges of different colors");
    if (e.red && e.red_out == t.red_out) bad("red edge needs one source end and one target end");
    if (!e.red && source(g, e.vertex) == source(g, t.vertex))
      bad("red sources and targets must alternate along blue loops");
  }
  // Euler characteristic 2 per connected component.
  std::vector<int> parent(g.rotation.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : g.half_edges) parent[find_root(parent, e.vertex)] = find_root(parent, g.half_edges[e.twin].vertex);
  // Each vertex contributes 1 - 3/2; work in halves to stay integral.
  std::map<int, long> chi;
  for (std::size_t v = 0; v < g.rotation.size(); ++v) chi[find_root(parent, static_cast<int>(v))] -= 1;
  for (auto& [root, c] : chi) c /= 2;
  for (const auto& walk : face_walks(g)) chi[find_root(parent, g.half_edges[walk.front()].vertex)] += 1;
  for (const auto& [root, c] : chi)
    if (c != 2) bad("rotation system is not planar");
}

std::vector<Face> graph_faces(const TrivalentGraph& g) {
  std::vector<Face> faces;
  for (auto& w : face_walks(g)) faces.push_back({std::move(w)});
  return faces;
}

int blue_loop_count(const TrivalentGraph& g) {
  std::vector<int> parent(g.rotation.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : g.half_edges)
    if (!e.red) parent[find_root(parent, e.vertex)] = find_root(parent, g.half_edges[e.twin].vertex);
  int loops = g.blue_circles;
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (find_root(parent, static_cast<int>(v)) == static_cast<int>(v)) ++loops;
  return loops;
}

LaurentQ graph_evaluation(const TrivalentGraph& g) {
  return LaurentQ::circle().pow(static_cast<unsigned>(blue_loop_count(g)));
}

std::optional<FaceDescriptor> find_bigon_or_square(const TrivalentGraph& g) {
  // Walks come out keyed by their least half-edge, in increasing order.
  for (const auto& walk : face_walks(g))
    if (auto kind = classify(g, walk)) return FaceDescriptor{*kind, walk};
  if (g.rotation.empty() && g.red_circles > 0) return FaceDescriptor{FaceKind::RedCircle, {}};
  return std::nullopt;
}

ReduceResult reduce_step(const TrivalentGraph& g, const FaceDescriptor& face) {
  if (face.kind == FaceKind::RedCircle) {
    if (g.red_circles < 1) fail(ErrorKind::InvalidFace, "graph has no red circle");
    TrivalentGraph out = g;
    --out.red_circles;
    return {out, LaurentQ(1)};
  }
  const auto& w = face.walk;
  std::size_t L = w.size();
  if (L != 2 && L != 4) fail(ErrorKind::InvalidFace, "face must have two or four sides");
  for (int h : w)
    if (h < 0 || static_cast<std::size_t>(h) >= g.half_edges.size()) fail(ErrorKind::InvalidFace, "unknown half-edge");
  for (std::size_t i = 0; i < L; ++i)
    if (face_next(g, w[i]) != w[(i + 1) % L]) fail(ErrorKind::InvalidFace, "walk is not a face");
  auto kind = classify(g, w);
  if (!kind || *kind != face.kind) fail(ErrorKind::InvalidFace, "face does not have the stated shape");

  std::vector<int> vert(L), leg(L);
  for (std::size_t i = 0; i < L; ++i) {
    vert[i] = g.half_edges[w[i]].vertex;
    leg[i] = third(g, vert[i], w[i], g.half_edges[w[(i + L - 1) % L]].twin);
  }
  TrivalentGraph work = g;
  LaurentQ factor(1);
  std::size_t r = 0;
  while (r < L && !g.half_edges[w[r]].red) ++r;
  switch (face.kind) {
    case FaceKind::CentralBigon:
      join(work, leg[0], leg[1]);
      factor = LaurentQ::circle();
      break;
    case FaceKind::SideBigon:
      join(work, leg[0], leg[1]);
      break;
    case FaceKind::SquareOne:
      join(work, leg[(r + 1) % 4], leg[(r + 2) % 4]);
      join(work, leg[(r + 3) % 4], leg[r]);
      break;
    case FaceKind::SquareTwo:
      join(work, leg[r], leg[(r + 1) % 4]);
      join(work, leg[(r + 2) % 4], leg[(r + 3) % 4]);
      break;
    case FaceKind::RedCircle: break;
  }
  // A red strand closed up by the step is a red circle, which contributes 1.
  work.red_circles = g.red_circles;
  std::set<int> removed(vert.begin(), vert.end());
  return {drop_vertices(work, removed), factor};
}

LaurentQ graded_dimension(const TrivalentGraph& g) {
  validate_graph(g);
  TrivalentGraph cur = g;
  LaurentQ factor(1);
  while (!cur.rotation.empty() || cur.red_circles > 0) {
    auto face = find_bigon_or_square(cur);
    if (!face)
      fail(ErrorKind::ReductionStuck,
           "no bigon or square among " + std::to_string(cur.red_edge_count()) + " red edges");
    ReduceResult step = reduce_step(cur, *face);
    factor *= step.factor;
    cur = std::move(step.graph);
  }
  return factor * LaurentQ::circle().pow(static_cast<unsigned>(cur.blue_circles));
}

std::vector<CupBasisElement> cup_basis(const TrivalentGraph& g) {
  int n = blue_loop_count(g);
  if (n > 24) fail(ErrorKind::TooLarge, "too many blue loops for an explicit basis");
  std::vector<CupBasisElement> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    CupBasisElement e;
    int dotted = 0;
    for (int i = 0; i < n; ++i) {
      int d = static_cast<int>((mask >> i) & 1UL);
      e.dots.push_back(d);
      dotted += d;
    }
    e.q_degree = (n - dotted) - dotted;
    out.push_back(std::move(e));
  }
  return out;
}

TrivalentGraph blue_circles_graph(int n) {
  TrivalentGraph g;
  g.blue_circles = n;
  return g;
}

}  // namespace knotfoam
