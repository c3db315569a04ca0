#include <algorithm>
#include <map>

#include "knotfoam/errors.hpp"
#include "knotfoam/graphs.hpp"

namespace knotfoam {

TrivalentGraph web_from_diagram(const PDCode& pd, const std::vector<bool>& web) {
  std::size_t n = pd.crossings.size();
  if (web.size() != n) fail(ErrorKind::InvalidDiagram, "web flags do not match crossing count");
  Orientation o = orient(pd);
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (std::size_t k = 0; k < n; ++k)
    for (int p = 0; p < 4; ++p) occ[pd.crossings[k][p]].push_back({static_cast<int>(k), p});

  TrivalentGraph g;
  // Half-edge sitting on slot (k, p) of a web crossing.
  std::vector<std::array<int, 4>> slot_he(n, std::array<int, 4>{-1, -1, -1, -1});
  auto add_vertex = [&](int k, std::array<int, 3> slots_or_red, bool out) {
    int v = static_cast<int>(g.rotation.size());
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) {
      int h = static_cast<int>(g.half_edges.size());
      HalfEdge e;
      e.vertex = v;
      if (slots_or_red[i] < 0) {
        e.red = true;
        e.red_out = out;
      } else {
        slot_he[k][slots_or_red[i]] = h;
      }
      g.half_edges.push_back(e);
      r[i] = h;
    }
    g.rotation.push_back(r);
    return v;
  };
  auto red_of = [&](int v) {
    for (int h : g.rotation[v])
      if (g.half_edges[h].red) return h;
    return -1;
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (!web[k]) continue;
    int kk = static_cast<int>(k);
    int v1, v2;
    if (o.sign[k] > 0) {
      v1 = add_vertex(kk, {0, -1, 3}, true);
      v2 = add_vertex(kk, {1, 2, -1}, false);
    } else {
      v1 = add_vertex(kk, {0, 1, -1}, true);
      v2 = add_vertex(kk, {2, 3, -1}, false);
    }
    int a = red_of(v1), b = red_of(v2);
    g.half_edges[a].twin = b;
    g.half_edges[b].twin = a;
  }
  // Slot reached through a smoothed crossing: the oriented pairing.
  auto through = [&](int k, int p) {
    static const int pos[4] = {1, 0, 3, 2};
    static const int neg[4] = {3, 2, 1, 0};
    return o.sign[k] > 0 ? pos[p] : neg[p];
  };
  auto other = [&](int k, int p) {
    const auto& v = occ.at(pd.crossings[k][p]);
    return v[0] == std::make_pair(k, p) ? v[1] : v[0];
  };
  std::vector<std::array<bool, 4>> seen(n, std::array<bool, 4>{false, false, false, false});
  for (std::size_t k = 0; k < n; ++k) {
    if (!web[k]) continue;
    for (int p = 0; p < 4; ++p) {
      int h = slot_he[k][p];
      if (g.half_edges[h].twin >= 0) continue;
      auto [ck, cp] = other(static_cast<int>(k), p);
      while (!web[ck]) {
        seen[ck][cp] = true;
        int q = through(ck, cp);
        seen[ck][q] = true;
        std::tie(ck, cp) = other(ck, q);
      }
      int t = slot_he[ck][cp];
      g.half_edges[h].twin = t;
      g.half_edges[t].twin = h;
    }
  }
  // Whatever is left of the smoothed crossings closes into blue circles.
  g.blue_circles = pd.extra_circles;
  for (std::size_t k = 0; k < n; ++k) {
    if (web[k]) continue;
    for (int p = 0; p < 4; ++p) {
      if (seen[k][p]) continue;
      ++g.blue_circles;
      int ck = static_cast<int>(k), cp = p;
      while (!seen[ck][cp]) {
        seen[ck][cp] = true;
        int q = through(ck, cp);
        seen[ck][q] = true;
        std::tie(ck, cp) = other(ck, q);
      }
    }
  }
  validate_graph(g);
  return g;
}

TrivalentGraph random_graph(std::mt19937_64& rng, int max_vertices) {
  int max_webs = std::max(0, max_vertices / 2);
  PDCode pd = random_diagram(rng, std::max(1, max_webs + 2), 6);
  std::vector<bool> web(pd.crossings.size(), false);
  std::vector<int> order(pd.crossings.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(0.7);
  int used = 0;
  for (int k : order) {
    if (used >= max_webs) break;
    if (coin(rng)) {
      web[k] = true;
      ++used;
    }
  }
  return web_from_diagram(pd, web);
}

}  // namespace knotfoam
