#include "knotfoam/lee.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "knotfoam/errors.hpp"
#include "sparse_elim.hpp"

namespace knotfoam {

namespace {

using QVec = std::vector<mpq_class>;

struct TrackedChain {
  int degree = 0;
  std::map<std::size_t, BigInt> coef;
};

// Lee complex after cancelling every q-preserving pivot. What is left has a
// differential that strictly raises q, so its filtered homology can be read
// off with dense linear algebra.
struct Reduced {
  std::vector<int> degree;
  std::vector<std::vector<int>> q;
  std::vector<std::vector<QVec>> d;  // d[k][col] is a column of length |level k+1|
  std::vector<std::pair<int, QVec>> chains;  // level, coordinates
};

// Residual of one elimination pass as a new complex, plus chains rewritten in
// its indexing.
template <class R>
GradedChainComplex extract(const detail::Eliminator<R>& el, const GradedChainComplex& src,
                           std::vector<std::pair<int, std::map<int, R>>>& chains_out,
                           const std::vector<std::size_t>& handles) {
  const auto& levels = el.levels();
  GradedChainComplex out;
  out.side = src.side;
  out.min_degree = src.min_degree;
  out.n_plus = src.n_plus;
  out.n_minus = src.n_minus;
  std::vector<std::vector<int>> index(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    ChainGroup g;
    g.degree = levels[k].degree;
    index[k].assign(levels[k].alive.size(), -1);
    for (std::size_t x = 0; x < levels[k].alive.size(); ++x)
      if (levels[k].alive[x]) {
        index[k][x] = static_cast<int>(g.gens.size());
        g.gens.push_back(src.groups[k].gens[x]);
      }
    out.groups.push_back(std::move(g));
  }
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    SparseMatrix m;
    m.cols = static_cast<int>(out.groups[k].gens.size());
    m.rows = static_cast<int>(out.groups[k + 1].gens.size());
    m.col.resize(m.cols);
    for (std::size_t x = 0; x < levels[k].alive.size(); ++x) {
      if (!levels[k].alive[x]) continue;
      auto& col = m.col[index[k][x]];
      for (const auto& [y, v] : levels[k].out[x]) {
        long lv;
        if constexpr (std::is_same_v<R, long>)
          lv = v;
        else
          lv = 0;  // only the integral pass is extracted this way
        col.push_back({index[k + 1][y], lv});
      }
      std::sort(col.begin(), col.end());
    }
    out.d.push_back(std::move(m));
  }
  chains_out.clear();
  for (std::size_t h : handles) {
    const auto& ch = el.chain(h);
    std::map<int, R> c;
    for (const auto& [x, v] : ch.coef) c[index[ch.level][x]] = v;
    chains_out.push_back({ch.level, std::move(c)});
  }
  return out;
}

Reduced reduce(const FilteredComplex& fc, const std::vector<TrackedChain>& chains) {
  const GradedChainComplex& c = fc.complex;
  auto level_of = [&](int degree) {
    int k = c.group_index(degree);
    if (k < 0) fail(ErrorKind::NotACycle, "chain degree outside the complex");
    return k;
  };
  // Pass 1: integral unit pivots.
  GradedChainComplex stage = c;
  std::vector<std::pair<int, std::map<int, long>>> stage_chains;
  bool integral_ok = true;
  try {
    detail::Eliminator<long> el(c);
    std::vector<std::size_t> handles;
    for (const auto& ch : chains) {
      std::unordered_map<int, long> m;
      for (const auto& [x, v] : ch.coef) m[static_cast<int>(x)] = v.get_si();
      handles.push_back(el.track(level_of(ch.degree), std::move(m)));
    }
    el.eliminate([](long v, int qs, int qt) { return qs == qt && detail::is_unit(v); });
    stage = extract(el, c, stage_chains, handles);
  } catch (const detail::Overflow&) {
    integral_ok = false;
  }
  // Pass 2: any q-preserving pivot over Q.
  detail::Eliminator<mpq_class> el(stage);
  std::vector<std::size_t> handles;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    std::unordered_map<int, mpq_class> m;
    if (integral_ok) {
      for (const auto& [x, v] : stage_chains[i].second) m[x] = v;
      handles.push_back(el.track(stage_chains[i].first, std::move(m)));
    } else {
      for (const auto& [x, v] : chains[i].coef) m[static_cast<int>(x)] = mpq_class(v);
      handles.push_back(el.track(level_of(chains[i].degree), std::move(m)));
    }
  }
  el.eliminate([](const mpq_class& v, int qs, int qt) { return qs == qt && v != 0; });

  const auto& levels = el.levels();
  Reduced r;
  std::vector<std::vector<int>> index(levels.size());
  r.q.resize(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    r.degree.push_back(levels[k].degree);
    index[k].assign(levels[k].alive.size(), -1);
    for (std::size_t x = 0; x < levels[k].alive.size(); ++x)
      if (levels[k].alive[x]) {
        index[k][x] = static_cast<int>(r.q[k].size());
        r.q[k].push_back(levels[k].q[x]);
      }
  }
  r.d.resize(levels.size());
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    r.d[k].assign(r.q[k].size(), QVec(r.q[k + 1].size(), 0));
    for (std::size_t x = 0; x < levels[k].alive.size(); ++x) {
      if (!levels[k].alive[x]) continue;
      for (const auto& [y, v] : levels[k].out[x]) r.d[k][index[k][x]][index[k + 1][y]] = v;
    }
  }
  for (std::size_t h : handles) {
    const auto& ch = el.chain(h);
    QVec v(r.q[ch.level].size(), 0);
    for (const auto& [x, val] : ch.coef) v[index[ch.level][x]] = val;
    r.chains.push_back({ch.level, std::move(v)});
  }
  return r;
}

std::size_t rank_of(std::vector<QVec> vecs) {
  if (vecs.empty()) return 0;
  std::size_t n = vecs[0].size();
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < vecs.size(); ++j) {
    std::size_t p = rank;
    while (p < vecs.size() && vecs[p][j] == 0) ++p;
    if (p == vecs.size()) continue;
    std::swap(vecs[p], vecs[rank]);
    for (std::size_t i = rank + 1; i < vecs.size(); ++i) {
      if (vecs[i][j] == 0) continue;
      mpq_class f = vecs[i][j] / vecs[rank][j];
      for (std::size_t jj = j; jj < n; ++jj) vecs[i][jj] -= f * vecs[rank][jj];
    }
    ++rank;
  }
  return rank;
}

// Kernel of d restricted to the generators of level k with q >= j.
std::vector<QVec> filtered_cycles(const Reduced& r, std::size_t k, int j) {
  std::vector<std::size_t> cols;
  for (std::size_t x = 0; x < r.q[k].size(); ++x)
    if (r.q[k][x] >= j) cols.push_back(x);
  std::size_t n = r.q[k].size();
  std::size_t m = k + 1 < r.q.size() ? r.q[k + 1].size() : 0;
  // Row reduce the m x |cols| matrix.
  std::vector<QVec> a(m, QVec(cols.size(), 0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < m; ++i) a[i][c] = r.d[k][cols[c]][i];
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols.size() && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    mpq_class inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t cc = 0; cc < cols.size(); ++cc) a[i][cc] -= f * a[row][cc];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  std::vector<char> is_pivot(cols.size(), 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < cols.size(); ++f) {
    if (is_pivot[f]) continue;
    QVec v(n, 0);
    v[cols[f]] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[cols[pivot_col[i]]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<QVec> boundaries(const Reduced& r, std::size_t k) {
  if (k == 0) return {};
  std::vector<QVec> b;
  for (const auto& col : r.d[k - 1])
    if (std::any_of(col.begin(), col.end(), [](const mpq_class& v) { return v != 0; })) b.push_back(col);
  return b;
}

std::pair<int, int> q_range(const Reduced& r) {
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& lvl : r.q)
    for (int q : lvl) {
      if (!any || q < lo) lo = q;
      if (!any || q > hi) hi = q;
      any = true;
    }
  return {lo, hi};
}

std::map<int, int> profile_of(const Reduced& r) {
  auto [lo, hi] = q_range(r);
  std::map<int, int> prof;
  std::vector<std::size_t> bdim(r.q.size());
  std::vector<std::vector<QVec>> bnd(r.q.size());
  for (std::size_t k = 0; k < r.q.size(); ++k) {
    bnd[k] = boundaries(r, k);
    bdim[k] = rank_of(bnd[k]);
  }
  for (int j = lo - 1; j <= hi + 1; ++j) {
    int total = 0;
    for (std::size_t k = 0; k < r.q.size(); ++k) {
      if (r.q[k].empty()) continue;
      auto z = filtered_cycles(r, k, j);
      z.insert(z.end(), bnd[k].begin(), bnd[k].end());
      total += static_cast<int>(rank_of(z) - bdim[k]);
    }
    prof[j] = total;
  }
  return prof;
}

int degree_of(const Reduced& r, std::size_t level, const QVec& z) {
  if (level + 1 < r.q.size()) {
    for (std::size_t i = 0; i < r.q[level + 1].size(); ++i) {
      mpq_class s = 0;
      for (std::size_t x = 0; x < z.size(); ++x) s += r.d[level][x][i] * z[x];
      if (s != 0) fail(ErrorKind::NotACycle, "chain is not a cycle");
    }
  }
  auto [lo, hi] = q_range(r);
  auto bnd = boundaries(r, level);
  {
    auto with = bnd;
    with.push_back(z);
    if (rank_of(with) == rank_of(bnd)) fail(ErrorKind::NotACycle, "class is zero in homology");
  }
  for (int j = hi + 1; j >= lo - 1; --j) {
    auto span = filtered_cycles(r, level, j);
    span.insert(span.end(), bnd.begin(), bnd.end());
    std::size_t base = rank_of(span);
    span.push_back(z);
    if (rank_of(span) == base) return j;
  }
  fail(ErrorKind::NotACycle, "class not reached by the filtration");
}

TrackedChain to_tracked(const LeeClass& c) { return {c.degree, c.coef}; }

}  // namespace

FilteredComplex build_lee(const PDCode& pd, const BuildOptions& opts) {
  return {pd, build_complex(pd, Side::Lee, opts)};
}

int lee_rank(const FilteredComplex& fc, int components) {
  Reduced r = reduce(fc, {});
  int total = 0;
  for (std::size_t k = 0; k < r.q.size(); ++k) {
    std::vector<QVec> cols;
    if (k + 1 < r.q.size()) cols = r.d[k];
    std::size_t out_rank = rank_of(cols);
    std::size_t in_rank = rank_of(boundaries(r, k));
    total += static_cast<int>(r.q[k].size() - out_rank - in_rank);
  }
  if (components >= 0 && components < 31 && total != (1 << components))
    fail(ErrorKind::RankMismatch,
         "Lee rank " + std::to_string(total) + " but " + std::to_string(components) + " components");
  return total;
}

LeeClass apply_differential(const FilteredComplex& fc, const LeeClass& c) {
  const auto& cx = fc.complex;
  int k = cx.group_index(c.degree);
  LeeClass out;
  out.degree = c.degree + 1;
  if (k < 0 || k >= static_cast<int>(cx.d.size())) return out;
  for (const auto& [x, v] : c.coef)
    for (const auto& [y, e] : cx.d[k].col[x]) out.coef[y] += v * e;
  for (auto it = out.coef.begin(); it != out.coef.end();)
    it = it->second == 0 ? out.coef.erase(it) : std::next(it);
  return out;
}

std::pair<LeeClass, LeeClass> oriented_resolution_generators(const FilteredComplex& fc) {
  const PDCode& pd = fc.pd;
  State st = oriented_state(pd);
  std::uint64_t v0 = 0;
  for (std::size_t k = 0; k < st.assignment.size(); ++k)
    if (st.assignment[k]) v0 |= std::uint64_t{1} << k;
  SmoothingResult sm = smooth_state(pd, st);
  int circles = sm.circles;
  // Seifert graph: the two circles meeting at each crossing.
  std::vector<std::vector<int>> adj(circles);
  Signs sg = compute_signs(pd);
  for (std::size_t k = 0; k < pd.crossings.size(); ++k) {
    const auto& c = pd.crossings[k];
    int a = sm.membership.at(c[0]);
    int b = sm.membership.at(sg.sign[k] > 0 ? c[2] : c[1]);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> color(circles, -1);
  for (int s = 0; s < circles; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> work{s};
    while (!work.empty()) {
      int u = work.front();
      work.pop_front();
      for (int w : adj[u]) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          work.push_back(w);
        } else if (color[w] == color[u]) {
          fail(ErrorKind::NotACycle, "Seifert graph is not bipartite");
        }
      }
    }
  }
  const auto& cx = fc.complex;
  int h = std::popcount(v0);
  int k = h;  // groups are indexed by height
  const auto& gens = cx.groups[k].gens;
  std::size_t offset = 0;
  while (offset < gens.size() && gens[offset].state != v0) ++offset;
  if (offset == gens.size()) fail(ErrorKind::NotACycle, "oriented state missing from the complex");

  auto make = [&](int a_color) {
    LeeClass c;
    c.degree = cx.groups[k].degree;
    for (std::uint64_t L = 0; L < (std::uint64_t{1} << circles); ++L) {
      long sign = 1;
      for (int i = 0; i < circles; ++i)
        if (((L >> i) & 1U) && color[i] != a_color) sign = -sign;
      c.coef[offset + L] = sign;
    }
    return c;
  };
  LeeClass sa = make(0), sb = make(1);
  if (!apply_differential(fc, sa).coef.empty()) fail(ErrorKind::NotACycle, "s_a is not a Lee cycle");
  if (!apply_differential(fc, sb).coef.empty()) fail(ErrorKind::NotACycle, "s_b is not a Lee cycle");
  return {sa, sb};
}

std::pair<LeeClass, LeeClass> oriented_resolution_generators(const PDCode& pd) {
  return oriented_resolution_generators(build_lee(pd));
}

std::map<int, int> filtration_profile(const FilteredComplex& fc) { return profile_of(reduce(fc, {})); }

int filtration_degree(const FilteredComplex& fc, const LeeClass& c) {
  Reduced r = reduce(fc, {to_tracked(c)});
  return degree_of(r, r.chains[0].first, r.chains[0].second);
}

SInvariantReport s_invariant_report(const PDCode& pd, const BuildOptions& opts) {
  if (components(pd).count != 1) fail(ErrorKind::NotAKnot, "s-invariant needs a single component");
  FilteredComplex fc = build_lee(pd, opts);
  auto [sa, sb] = oriented_resolution_generators(fc);
  Reduced r = reduce(fc, {to_tracked(sa), to_tracked(sb)});
  SInvariantReport rep;
  rep.profile = profile_of(r);
  bool have_min = false, have_max = false;
  for (const auto& [j, rank] : rep.profile) {
    if (rank == 2) {
      rep.s_min = j;
      have_min = true;
    }
    if (rank >= 1) {
      rep.s_max = j;
      have_max = true;
    }
  }
  if (!have_min || !have_max) fail(ErrorKind::RankMismatch, "filtration profile never reaches rank 2");
  if (rep.s_max != rep.s_min + 2)
    fail(ErrorKind::PropositionViolated,
         "s_max = " + std::to_string(rep.s_max) + " but s_min = " + std::to_string(rep.s_min));
  rep.s = rep.s_min + 1;
  rep.sa_degree = degree_of(r, r.chains[0].first, r.chains[0].second);
  rep.sb_degree = degree_of(r, r.chains[1].first, r.chains[1].second);
  if (rep.sa_degree != rep.s_min || rep.sb_degree != rep.s_min)
    fail(ErrorKind::PropositionViolated, "filtration degree of [s_a] is " + std::to_string(rep.sa_degree) +
                                             ", of [s_b] is " + std::to_string(rep.sb_degree) + ", s_min is " +
                                             std::to_string(rep.s_min));
  if (rep.s % 2 != 0) fail(ErrorKind::PropositionViolated, "s is odd");
  return rep;
}

int s_invariant(const PDCode& pd) { return s_invariant_report(pd).s; }

int slice_genus_lower_bound(int s) { return (std::abs(s) + 1) / 2; }

}  // namespace knotfoam
