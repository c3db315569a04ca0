#include "knotfoam/homology.hpp"

#include <algorithm>

#include "knotfoam/errors.hpp"
#include "sparse_elim.hpp"

namespace knotfoam {

int HomologyTable::total_rank() const {
  int n = 0;
  for (const auto& [key, e] : entries) n += e.betti;
  return n;
}

std::size_t HomologyTable::torsion_count() const {
  std::size_t n = 0;
  for (const auto& [key, e] : entries) n += e.torsion.size();
  return n;
}

LaurentQ HomologyTable::euler_characteristic() const {
  LaurentQ out;
  for (const auto& [key, e] : entries)
    if (e.betti) out += LaurentQ::monomial(key.first % 2 ? -e.betti : e.betti, key.second);
  return out;
}

SNFResult smith_normal_form(DenseMatrix a) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  SNFResult out;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= f * a[t][j];
        if (a[i][t] != 0) {
          clean = false;
          if (abs(a[i][t]) < abs(a[t][t])) std::swap(a[i], a[t]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= f * a[i][t];
        if (a[t][j] != 0) {
          clean = false;
          if (abs(a[t][j]) < abs(a[t][t]))
            for (auto& row : a) std::swap(row[t], row[j]);
        }
      }
      if (!clean) continue;
      // Divisibility: fold in any row whose entries a[t][t] does not divide.
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            clean = false;
            break;
          }
    }
    out.factors.push_back(abs(a[t][t]));
    ++t;
  }
  return out;
}

std::size_t rational_rank(const DenseMatrix& m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols && rank < rows; ++j) {
    std::size_t p = rank;
    while (p < rows && a[p][j] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][j] == 0) continue;
      mpq_class f = a[i][j] / a[rank][j];
      for (std::size_t jj = j; jj < cols; ++jj) a[i][jj] -= f * a[rank][jj];
    }
    ++rank;
  }
  return rank;
}

std::vector<BigInt> prime_power_parts(BigInt n) {
  std::vector<BigInt> parts;
  n = abs(n);
  for (BigInt p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    BigInt pe = 1;
    while (n % p == 0) {
      n /= p;
      pe *= p;
    }
    parts.push_back(pe);
  }
  if (n > 1) parts.push_back(n);
  std::sort(parts.begin(), parts.end());
  return parts;
}

void check_complex(const GradedChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.d.size(); ++k)
    if (multiply(c.d[k + 1], c.d[k]).nonzeros() != 0)
      fail(ErrorKind::NotAComplex, "d o d != 0 from degree " + std::to_string(c.groups[k].degree));
  if (c.side != Side::Kh) return;
  for (std::size_t k = 0; k < c.d.size(); ++k)
    for (int j = 0; j < c.d[k].cols; ++j)
      for (const auto& [i, v] : c.d[k].col[j])
        if (c.groups[k + 1].gens[i].q != c.groups[k].gens[j].q)
          fail(ErrorKind::NotAComplex, "differential changes q in degree " + std::to_string(c.groups[k].degree));
}

namespace {

// Residual blocks after cancelling unit pivots: for each level and q, the
// surviving generators and the dense matrix of d into the next level.
struct Residual {
  struct Block {
    int size = 0;
    DenseMatrix out;  // rows: next level, same q
  };
  std::vector<int> degree;
  std::vector<std::map<int, Block>> blocks;
};

template <class R>
Residual residual(const GradedChainComplex& c) {
  detail::Eliminator<R> el(c);
  el.eliminate([](const R& v, int qs, int qt) { return qs == qt && detail::is_unit(v); });
  const auto& levels = el.levels();
  Residual res;
  res.blocks.resize(levels.size());
  std::vector<std::map<int, int>> pos(levels.size());  // generator -> row/col within its q block
  std::vector<std::map<int, int>> next_index(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    res.degree.push_back(levels[k].degree);
    for (std::size_t x = 0; x < levels[k].alive.size(); ++x) {
      if (!levels[k].alive[x]) continue;
      auto& b = res.blocks[k][levels[k].q[x]];
      pos[k][static_cast<int>(x)] = b.size++;
    }
  }
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    for (auto& [q, b] : res.blocks[k]) {
      auto it = res.blocks[k + 1].find(q);
      int rows = it == res.blocks[k + 1].end() ? 0 : it->second.size;
      b.out.assign(rows, std::vector<BigInt>(b.size, 0));
    }
    for (const auto& [x, col] : pos[k]) {
      int q = levels[k].q[x];
      auto& b = res.blocks[k][q];
      for (const auto& [y, v] : levels[k].out[x]) {
        if (levels[k + 1].q[y] != q) continue;
        BigInt val;
        if constexpr (std::is_same_v<R, long>)
          val = v;
        else
          val = BigInt(v);
        b.out[pos[k + 1].at(y)][col] = val;
      }
    }
  }
  return res;
}

Residual residual_any(const GradedChainComplex& c) {
  try {
    return residual<long>(c);
  } catch (const detail::Overflow&) {
    return residual<mpz_class>(c);
  }
}

int block_size(const Residual& r, std::size_t k, int q) {
  auto it = r.blocks[k].find(q);
  return it == r.blocks[k].end() ? 0 : it->second.size;
}

}  // namespace

HomologyTable integral_homology(const GradedChainComplex& c) {
  check_complex(c);
  if (c.side != Side::Kh) fail(ErrorKind::NotAComplex, "integral homology needs a q-graded complex");
  Residual r = residual_any(c);
  std::size_t K = r.blocks.size();
  // snf[k][q] for d from level k.
  std::vector<std::map<int, SNFResult>> snf(K);
  for (std::size_t k = 0; k < K; ++k)
    for (const auto& [q, b] : r.blocks[k])
      if (k + 1 < K) snf[k][q] = smith_normal_form(b.out);
  HomologyTable t;
  for (std::size_t k = 0; k < K; ++k) {
    for (const auto& [q, b] : r.blocks[k]) {
      int out_rank = k + 1 < K ? static_cast<int>(snf[k][q].rank()) : 0;
      int in_rank = 0;
      std::vector<BigInt> torsion;
      if (k > 0) {
        auto it = snf[k - 1].find(q);
        if (it != snf[k - 1].end()) {
          in_rank = static_cast<int>(it->second.rank());
          for (const auto& f : it->second.factors)
            if (f > 1)
              for (auto& pp : prime_power_parts(f)) torsion.push_back(pp);
        }
      }
      std::sort(torsion.begin(), torsion.end());
      HomologyEntry e{b.size - out_rank - in_rank, torsion};
      if (e.betti != 0 || !e.torsion.empty()) t.entries[{r.degree[k], q}] = e;
    }
  }
  return t;
}

std::map<std::pair<int, int>, int> rational_betti(const GradedChainComplex& c) {
  check_complex(c);
  if (c.side != Side::Kh) fail(ErrorKind::NotAComplex, "rational Betti numbers need a q-graded complex");
  Residual r = residual_any(c);
  std::size_t K = r.blocks.size();
  std::map<std::pair<int, int>, int> out;
  for (std::size_t k = 0; k < K; ++k) {
    for (const auto& [q, b] : r.blocks[k]) {
      int out_rank = k + 1 < K ? static_cast<int>(rational_rank(b.out)) : 0;
      int in_rank = 0;
      if (k > 0 && block_size(r, k - 1, q) > 0)
        in_rank = static_cast<int>(rational_rank(r.blocks[k - 1].at(q).out));
      int betti = b.size - out_rank - in_rank;
      if (betti) out[{r.degree[k], q}] = betti;
    }
  }
  return out;
}

}  // namespace knotfoam
