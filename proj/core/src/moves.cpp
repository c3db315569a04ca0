#include <algorithm>
#include <set>

#include "knotfoam/diagram.hpp"
#include "knotfoam/errors.hpp"

namespace knotfoam {

namespace {

int max_label(const PDCode& pd) {
  int m = 0;
  for (const auto& c : pd.crossings)
    for (int a : c) m = std::max(m, a);
  return m;
}

PDCode r1(const PDCode& pd, bool positive, const MoveSite& site) {
  PDCode out = pd;
  if (site.arc == 0) {
    if (pd.extra_circles < 1) fail(ErrorKind::InvalidSite, "no crossingless circle for R1");
    int x = max_label(pd) + 1, y = x + 1;
    --out.extra_circles;
    if (positive)
      out.crossings.push_back({x, x, y, y});
    else
      out.crossings.push_back({x, y, y, x});
    return out;
  }
  Orientation o = orient(pd);
  auto it = o.arcs.find(site.arc);
  if (it == o.arcs.end()) fail(ErrorKind::InvalidSite, "arc " + std::to_string(site.arc) + " not in diagram");
  int x = site.arc;
  int y = max_label(pd) + 1, z = y + 1;
  out.crossings[it->second.head_crossing][it->second.head_slot] = z;
  bool alt = site.variant != 0;
  if (positive)
    out.crossings.push_back(alt ? std::array<int, 4>{y, y, z, x} : std::array<int, 4>{x, z, y, y});
  else
    out.crossings.push_back(alt ? std::array<int, 4>{y, x, z, y} : std::array<int, 4>{x, y, y, z});
  return out;
}

// Compass directions in counterclockwise order.
enum Dir { E = 0, N = 1, W = 2, S = 3 };

struct Prong {
  int label = 0;
  bool in = false;
  int strand = 0;
};

std::array<int, 4> assemble(const std::array<Prong, 4>& at, int under) {
  int start = -1;
  for (int d = 0; d < 4; ++d)
    if (at[d].strand == under && at[d].in) start = d;
  std::array<int, 4> t{};
  for (int i = 0; i < 4; ++i) t[i] = at[(start + i) % 4].label;
  return t;
}

PDCode r2(const PDCode& pd, const MoveSite& site) {
  if (site.arc == site.arc2) fail(ErrorKind::InvalidSite, "R2 needs two distinct arcs");
  auto faces = pd_faces(pd);
  auto find_in = [](const std::vector<FaceArc>& f, int arc) -> const FaceArc* {
    for (const auto& fa : f)
      if (fa.arc == arc) return &fa;
    return nullptr;
  };
  const FaceArc* a1 = nullptr;
  const FaceArc* a2 = nullptr;
  if (site.face >= 0) {
    if (site.face >= static_cast<int>(faces.size())) fail(ErrorKind::InvalidSite, "face index out of range");
    a1 = find_in(faces[site.face], site.arc);
    a2 = find_in(faces[site.face], site.arc2);
  } else {
    for (const auto& f : faces) {
      a1 = find_in(f, site.arc);
      a2 = find_in(f, site.arc2);
      if (a1 && a2) break;
    }
  }
  if (!a1 || !a2) fail(ErrorKind::InvalidSite, "arcs do not share a face");

  Orientation o = orient(pd);
  int m = max_label(pd);
  int x1a = site.arc, x1b = m + 1, x1c = m + 2;
  int x2a = site.arc2, x2b = m + 3, x2c = m + 4;
  PDCode out = pd;
  const ArcEnds& e1 = o.arcs.at(site.arc);
  const ArcEnds& e2 = o.arcs.at(site.arc2);
  out.crossings[e1.head_crossing][e1.head_slot] = x1c;
  out.crossings[e2.head_crossing][e2.head_slot] = x2c;

  // arc2 runs north; the face lies on side s of it and arc1 beyond the face.
  int s = a2->left ? W : E;
  int tip = s == W ? E : W;
  bool north = a1->left != a2->left;
  std::array<Prong, 4> c1{}, c2{};
  c1[S] = {x2a, true, 2};
  c1[N] = {x2b, false, 2};
  c2[S] = {x2b, true, 2};
  c2[N] = {x2c, false, 2};
  std::array<Prong, 4>& first = north ? c1 : c2;
  std::array<Prong, 4>& second = north ? c2 : c1;
  first[s] = {x1a, true, 1};
  first[tip] = {x1b, false, 1};
  second[tip] = {x1b, true, 1};
  second[s] = {x1c, false, 1};
  int under = site.variant == 0 ? 2 : 1;
  out.crossings.push_back(assemble(c1, under));
  out.crossings.push_back(assemble(c2, under));
  return out;
}

}  // namespace

PDCode reidemeister_move(const PDCode& pd, Move move, const MoveSite& site) {
  switch (move) {
    case Move::R1Plus: return r1(pd, true, site);
    case Move::R1Minus: return r1(pd, false, site);
    case Move::R2: return r2(pd, site);
  }
  fail(ErrorKind::InvalidSite, "unknown move");
}

PDCode cancel_r2(const PDCode& pd, int i, int j) {
  int n = static_cast<int>(pd.crossings.size());
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::InvalidSite, "bad crossing indices");
  const auto& ci = pd.crossings[i];
  const auto& cj = pd.crossings[j];
  std::vector<int> shared_slots;
  for (int p = 0; p < 4; ++p)
    if (std::count(cj.begin(), cj.end(), ci[p]) == 1 && std::count(ci.begin(), ci.end(), ci[p]) == 1)
      shared_slots.push_back(p);
  if (shared_slots.size() != 2 || (shared_slots[1] - shared_slots[0]) % 2 == 0)
    fail(ErrorKind::InvalidSite, "crossings do not bound a bigon");
  Signs sg = compute_signs(pd);
  if (sg.sign[i] == sg.sign[j]) fail(ErrorKind::InvalidSite, "bigon crossings have equal signs");

  std::set<int> shared{ci[shared_slots[0]], ci[shared_slots[1]]};
  std::map<int, int> rename;
  int circles = 0;
  for (int p = 0; p < 4; ++p) {
    int u = ci[p];
    if (shared.count(u)) continue;
    int mid = ci[(p + 2) % 4];
    int t = static_cast<int>(std::find(cj.begin(), cj.end(), mid) - cj.begin());
    int partner = cj[(t + 2) % 4];
    if (partner == u)
      ++circles;
    else
      rename[partner] = u;
  }
  PDCode out;
  out.extra_circles = pd.extra_circles + circles;
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    auto c = pd.crossings[k];
    for (int& a : c)
      if (auto it = rename.find(a); it != rename.end()) a = it->second;
    out.crossings.push_back(c);
  }
  if (out.crossings.empty() && out.extra_circles == 0) out.extra_circles = 1;
  return out;
}

PDCode random_move(const PDCode& pd, std::mt19937_64& rng, Move* applied) {
  std::uniform_int_distribution<int> kind_d(0, 2);
  std::bernoulli_distribution coin(0.5);
  int kind = kind_d(rng);
  if (kind == 2 && !pd.crossings.empty()) {
    auto faces = pd_faces(pd);
    std::vector<int> usable;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      std::set<int> arcs;
      for (const auto& fa : faces[f]) arcs.insert(fa.arc);
      if (arcs.size() >= 2) usable.push_back(static_cast<int>(f));
    }
    if (!usable.empty()) {
      int f = usable[std::uniform_int_distribution<std::size_t>(0, usable.size() - 1)(rng)];
      std::vector<int> arcs;
      for (const auto& fa : faces[f])
        if (std::find(arcs.begin(), arcs.end(), fa.arc) == arcs.end()) arcs.push_back(fa.arc);
      std::shuffle(arcs.begin(), arcs.end(), rng);
      MoveSite site{arcs[0], arcs[1], f, coin(rng) ? 1 : 0};
      if (applied) *applied = Move::R2;
      return reidemeister_move(pd, Move::R2, site);
    }
  }
  Move m = coin(rng) ? Move::R1Plus : Move::R1Minus;
  MoveSite site;
  if (!pd.crossings.empty()) {
    Orientation o = orient(pd);
    std::vector<int> arcs;
    for (const auto& [label, e] : o.arcs) arcs.push_back(label);
    site.arc = arcs[std::uniform_int_distribution<std::size_t>(0, arcs.size() - 1)(rng)];
    site.variant = coin(rng) ? 1 : 0;
  }
  if (applied) *applied = m;
  return reidemeister_move(pd, m, site);
}

}  // namespace knotfoam
