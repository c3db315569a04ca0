#include "knotfoam/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <thread>

#include "knotfoam/errors.hpp"

namespace knotfoam {

long SparseMatrix::at(int r, int c) const {
  for (const auto& [row, v] : col[c])
    if (row == r) return v;
  return 0;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : col) n += c.size();
  return n;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) fail(ErrorKind::NotAComplex, "matrix shapes do not compose");
  SparseMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.col.resize(b.cols);
  std::map<int, long> acc;
  for (int j = 0; j < b.cols; ++j) {
    acc.clear();
    for (const auto& [k, bv] : b.col[j])
      for (const auto& [i, av] : a.col[k]) acc[i] += av * bv;
    for (const auto& [i, v] : acc)
      if (v != 0) out.col[j].push_back({i, v});
  }
  return out;
}

std::size_t GradedChainComplex::generator_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.gens.size();
  return n;
}

int GradedChainComplex::group_index(int degree) const {
  int k = degree - min_degree;
  return k >= 0 && k < static_cast<int>(groups.size()) ? k : -1;
}

std::vector<std::pair<unsigned, long>> edge_map(EdgeKind kind, Side side, unsigned input) {
  if (kind == EdgeKind::Merge) {
    switch (input & 3U) {
      case 0: return {{0U, 1}};
      case 1:
      case 2: return {{1U, 1}};
      default: return side == Side::Lee ? std::vector<std::pair<unsigned, long>>{{0U, 1}} : std::vector<std::pair<unsigned, long>>{};
    }
  }
  if ((input & 1U) == 0) return {{1U, 1}, {2U, 1}};
  if (side == Side::Lee) return {{0U, 1}, {3U, 1}};
  return {{3U, 1}};
}

int edge_sign(std::uint64_t v, int j) {
  std::uint64_t below = j == 0 ? 0 : (v & ((std::uint64_t{1} << j) - 1));
  return std::popcount(below) % 2 ? -1 : 1;
}

namespace {

// Circle structure of every cube vertex.
struct Cube {
  int n = 0;
  int arcs = 0;
  int extra = 0;
  std::vector<std::array<int, 4>> cross;  // compact arc indices
  std::vector<std::vector<std::uint8_t>> circ;
  std::vector<int> count;
  std::vector<std::vector<int>> rep;  // first arc of each arc circle

  explicit Cube(const PDCode& pd) {
    n = static_cast<int>(pd.crossings.size());
    extra = pd.extra_circles;
    std::map<int, int> index;
    for (const auto& c : pd.crossings)
      for (int a : c) index.emplace(a, 0);
    for (auto& [label, i] : index) i = arcs++;
    for (const auto& c : pd.crossings) cross.push_back({index[c[0]], index[c[1]], index[c[2]], index[c[3]]});
    std::size_t states = std::size_t{1} << n;
    circ.resize(states);
    count.resize(states);
    rep.resize(states);
    std::vector<int> parent(arcs);
    for (std::size_t v = 0; v < states; ++v) {
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (int k = 0; k < n; ++k) {
        const auto& c = cross[k];
        if ((v >> k) & 1U) {
          parent[find(c[0])] = find(c[3]);
          parent[find(c[1])] = find(c[2]);
        } else {
          parent[find(c[0])] = find(c[1]);
          parent[find(c[2])] = find(c[3]);
        }
      }
      std::vector<int> id(arcs, -1);
      auto& cv = circ[v];
      cv.resize(arcs);
      int next = 0;
      for (int a = 0; a < arcs; ++a) {
        int r = find(a);
        if (id[r] < 0) {
          id[r] = next++;
          rep[v].push_back(a);
        }
        cv[a] = static_cast<std::uint8_t>(id[r]);
      }
      count[v] = next + extra;
    }
  }
};

}  // namespace

GradedChainComplex build_complex(const PDCode& pd, Side side, const BuildOptions& opts) {
  int n = static_cast<int>(pd.crossings.size());
  if (n > opts.max_crossings || n > 30)
    fail(ErrorKind::TooLarge, std::to_string(n) + " crossings exceeds the limit of " + std::to_string(opts.max_crossings));
  check_planar(pd);
  Signs sg = compute_signs(pd);
  Cube cube(pd);
  if (cube.arcs + cube.extra > 60) fail(ErrorKind::TooLarge, "too many circles");

  GradedChainComplex cx;
  cx.side = side;
  cx.n_plus = sg.n_plus;
  cx.n_minus = sg.n_minus;
  cx.min_degree = -sg.n_minus;
  cx.groups.resize(n + 1);
  std::size_t states = std::size_t{1} << n;
  std::vector<std::size_t> offset(states);
  for (int h = 0; h <= n; ++h) cx.groups[h].degree = h - sg.n_minus;
  for (std::size_t v = 0; v < states; ++v) {
    int h = std::popcount(v);
    auto& grp = cx.groups[h].gens;
    offset[v] = grp.size();
    int circles = cube.count[v];
    for (std::uint64_t L = 0; L < (std::uint64_t{1} << circles); ++L) {
      int xs = std::popcount(L);
      grp.push_back({v, L, (circles - 2 * xs) + h + sg.n_plus - 2 * sg.n_minus});
    }
  }

  cx.d.resize(n);
  for (int h = 0; h < n; ++h) {
    auto& mat = cx.d[h];
    mat.rows = static_cast<int>(cx.groups[h + 1].gens.size());
    mat.cols = static_cast<int>(cx.groups[h].gens.size());
    mat.col.resize(mat.cols);
  }

  auto fill_state = [&](std::uint64_t v) {
    int h = std::popcount(v);
    auto& mat = cx.d[h];
    int circles = cube.count[v];
    int arc_circles = circles - cube.extra;
    const auto& cv = cube.circ[v];
    for (int j = 0; j < n; ++j) {
      if ((v >> j) & 1U) continue;
      std::uint64_t w = v | (std::uint64_t{1} << j);
      long sign = edge_sign(v, j);
      const auto& cw = cube.circ[w];
      int w_arc_circles = cube.count[w] - cube.extra;
      const auto& c = cube.cross[j];
      int A = cv[c[0]], C = cv[c[2]];
      bool merge = A != C;
      int P = cw[c[0]], Q = cw[c[1]];
      // Where each untouched circle of v goes in w.
      std::vector<int> to(circles, -1);
      for (int k = 0; k < arc_circles; ++k)
        if (k != A && k != C) to[k] = cw[cube.rep[v][k]];
      for (int e = 0; e < cube.extra; ++e) to[arc_circles + e] = w_arc_circles + e;
      for (std::uint64_t L = 0; L < (std::uint64_t{1} << circles); ++L) {
        std::uint64_t base = 0;
        for (int k = 0; k < circles; ++k)
          if (to[k] >= 0 && ((L >> k) & 1U)) base |= std::uint64_t{1} << to[k];
        unsigned input = merge ? static_cast<unsigned>(((L >> A) & 1U) | (((L >> C) & 1U) << 1))
                               : static_cast<unsigned>((L >> A) & 1U);
        auto& column = mat.col[offset[v] + L];
        for (const auto& [out, coef] : edge_map(merge ? EdgeKind::Merge : EdgeKind::Split, side, input)) {
          std::uint64_t T = base;
          if (merge) {
            if (out & 1U) T |= std::uint64_t{1} << P;
          } else {
            if (out & 1U) T |= std::uint64_t{1} << P;
            if (out & 2U) T |= std::uint64_t{1} << Q;
          }
          column.push_back({static_cast<int>(offset[w] + T), sign * coef});
        }
      }
    }
    for (std::uint64_t L = 0; L < (std::uint64_t{1} << circles); ++L) {
      auto& column = mat.col[offset[v] + L];
      std::sort(column.begin(), column.end());
    }
  };

  int threads = std::max(1, opts.threads);
  if (threads == 1 || states < 64) {
    for (std::size_t v = 0; v < states; ++v)
      if (std::popcount(v) < n) fill_state(v);
  } else {
    // Each state writes only its own columns, so the result is independent
    // of the schedule.
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t v = t; v < states; v += threads)
          if (std::popcount(v) < n) fill_state(v);
      });
    for (auto& th : pool) th.join();
  }
  return cx;
}

LaurentQ graded_euler_characteristic(const GradedChainComplex& c) {
  std::map<int, long> acc;
  for (const auto& g : c.groups) {
    long s = (g.degree % 2 == 0) ? 1 : -1;
    for (const auto& gen : g.gens) acc[gen.q] += s;
  }
  LaurentQ out;
  for (const auto& [q, v] : acc)
    if (v != 0) out += LaurentQ::monomial(v, q);
  return out;
}

LaurentQ kauffman_oracle(const PDCode& pd, int max_crossings) {
  int n = static_cast<int>(pd.crossings.size());
  if (n > max_crossings || n > 30)
    fail(ErrorKind::TooLarge, std::to_string(n) + " crossings exceeds the limit of " + std::to_string(max_crossings));
  Signs sg = compute_signs(pd);
  // Slot (k, p) -> slot at the other end of the same arc.
  std::map<int, std::vector<int>> where;
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < 4; ++p) where[pd.crossings[k][p]].push_back(4 * k + p);
  std::vector<int> across(4 * n);
  for (const auto& [label, v] : where) {
    across[v[0]] = v[1];
    across[v[1]] = v[0];
  }
  static const int zero_pair[4] = {1, 0, 3, 2};
  static const int one_pair[4] = {3, 2, 1, 0};
  // tally[h][circles]
  std::vector<std::vector<long>> tally(n + 1, std::vector<long>(2 * n + pd.extra_circles + 2, 0));
  std::vector<char> seen(4 * n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    int loops = 0;
    for (int start = 0; start < 4 * n; ++start) {
      if (seen[start]) continue;
      ++loops;
      int x = start;
      while (!seen[x]) {
        seen[x] = 1;
        int k = x / 4, p = x % 4;
        int y = 4 * k + (((s >> k) & 1U) ? one_pair[p] : zero_pair[p]);
        seen[y] = 1;
        x = across[y];
      }
    }
    tally[std::popcount(s)][loops + pd.extra_circles]++;
  }
  LaurentQ sum;
  LaurentQ minus_q = LaurentQ::monomial(-1, 1);
  for (int h = 0; h <= n; ++h)
    for (std::size_t c = 0; c < tally[h].size(); ++c)
      if (tally[h][c]) sum += LaurentQ(tally[h][c]) * minus_q.pow(h) * LaurentQ::circle().pow(static_cast<unsigned>(c));
  LaurentQ shift = LaurentQ::monomial(sg.n_minus % 2 ? -1 : 1, sg.n_plus - 2 * sg.n_minus);
  return shift * sum;
}

std::string audit_complex(const GradedChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.d.size(); ++k) {
    SparseMatrix dd = multiply(c.d[k + 1], c.d[k]);
    if (dd.nonzeros() != 0)
      return "d o d is nonzero from degree " + std::to_string(c.groups[k].degree);
  }
  for (std::size_t k = 0; k < c.d.size(); ++k) {
    const auto& src = c.groups[k].gens;
    const auto& dst = c.groups[k + 1].gens;
    for (std::size_t j = 0; j < src.size(); ++j)
      for (const auto& [i, v] : c.d[k].col[j]) {
        int dq = dst[i].q - src[j].q;
        bool ok = dq == 0 || (c.side == Side::Lee && dq == 4);
        if (!ok)
          return "entry in degree " + std::to_string(c.groups[k].degree) + " shifts q by " + std::to_string(dq);
      }
  }
  return {};
}

}  // namespace knotfoam
