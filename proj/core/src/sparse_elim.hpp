#pragma once

// Gaussian elimination on sparse chain complexes: an entry phi between x in
// degree k and y in degree k+1 is an invertible pivot; x and y are dropped
// and every other x' -> y' entry picks up -d(x')_y phi^{-1} d(x)_{y'}. The
// result is chain homotopy equivalent to the input, and filtered homotopy
// equivalent when pivots preserve q.

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "knotfoam/khovanov.hpp"

namespace knotfoam::detail {

struct Overflow : std::runtime_error {
  Overflow() : std::runtime_error("coefficient overflow") {}
};

inline long ring_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline long ring_sub(long a, long b) {
  long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline mpz_class ring_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class ring_sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline mpq_class ring_mul(const mpq_class& a, const mpq_class& b) { return a * b; }
inline mpq_class ring_sub(const mpq_class& a, const mpq_class& b) { return a - b; }

// Inverse of a pivot; integer pivots are always +-1.
inline long ring_inv(long a) { return a; }
inline mpz_class ring_inv(const mpz_class& a) { return a; }
inline mpq_class ring_inv(const mpq_class& a) { return 1 / a; }

inline bool is_unit(long a) { return a == 1 || a == -1; }
inline bool is_unit(const mpz_class& a) { return a == 1 || a == -1; }
inline bool is_unit(const mpq_class& a) { return a != 0; }

template <class R>
class Eliminator {
 public:
  struct Level {
    int degree = 0;
    std::vector<int> q;
    std::vector<char> alive;
    std::vector<std::unordered_map<int, R>> out;
    std::vector<std::unordered_set<int>> in;
  };

  struct Chain {
    int level = 0;
    std::unordered_map<int, R> coef;
  };

  explicit Eliminator(const GradedChainComplex& c) {
    levels_.resize(c.groups.size());
    for (std::size_t k = 0; k < c.groups.size(); ++k) {
      Level& L = levels_[k];
      L.degree = c.groups[k].degree;
      std::size_t n = c.groups[k].gens.size();
      for (const auto& g : c.groups[k].gens) L.q.push_back(g.q);
      L.alive.assign(n, 1);
      L.out.resize(n);
      L.in.resize(n);
    }
    for (std::size_t k = 0; k < c.d.size(); ++k)
      for (int j = 0; j < c.d[k].cols; ++j)
        for (const auto& [i, v] : c.d[k].col[j]) {
          levels_[k].out[j].emplace(i, R(v));
          levels_[k + 1].in[i].insert(j);
        }
  }

  std::size_t track(int level, std::unordered_map<int, R> coef) {
    chains_.push_back({level, std::move(coef)});
    return chains_.size() - 1;
  }
  const Chain& chain(std::size_t i) const { return chains_[i]; }
  const std::vector<Level>& levels() const { return levels_; }

  // ok(phi, q_source, q_target) accepts a pivot.
  template <class Pred>
  void eliminate(Pred ok) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
        Level& A = levels_[k];
        for (std::size_t x = 0; x < A.out.size(); ++x) {
          if (!A.alive[x]) continue;
          int best = -1;
          for (const auto& [y, v] : A.out[x])
            if ((best < 0 || y < best) && ok(v, A.q[x], levels_[k + 1].q[y])) best = y;
          if (best >= 0) {
            cancel(k, static_cast<int>(x), best);
            changed = true;
          }
        }
      }
    }
  }

 private:
  void cancel(std::size_t k, int x, int y) {
    Level& A = levels_[k];
    Level& B = levels_[k + 1];
    R inv = ring_inv(A.out[x].at(y));
    std::vector<std::pair<int, R>> gamma;
    for (const auto& [t, v] : A.out[x])
      if (t != y) gamma.push_back({t, v});
    std::sort(gamma.begin(), gamma.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> sources;
    for (int s : B.in[y])
      if (s != x) sources.push_back(s);
    std::sort(sources.begin(), sources.end());
    for (int s : sources) {
      auto& col = A.out[s];
      R f = ring_mul(col.at(y), inv);
      for (const auto& [t, g] : gamma) {
        auto it = col.find(t);
        R cur = it == col.end() ? R(0) : it->second;
        R next = ring_sub(cur, ring_mul(f, g));
        if (next == 0) {
          if (it != col.end()) {
            col.erase(it);
            B.in[t].erase(s);
          }
        } else if (it == col.end()) {
          col.emplace(t, next);
          B.in[t].insert(s);
        } else {
          it->second = next;
        }
      }
    }
    for (auto& ch : chains_) {
      if (ch.level == static_cast<int>(k) + 1) {
        auto it = ch.coef.find(y);
        if (it != ch.coef.end()) {
          R cy = ring_mul(it->second, inv);
          ch.coef.erase(it);
          for (const auto& [t, g] : gamma) {
            auto jt = ch.coef.find(t);
            R cur = jt == ch.coef.end() ? R(0) : jt->second;
            R next = ring_sub(cur, ring_mul(g, cy));
            if (next == 0) {
              if (jt != ch.coef.end()) ch.coef.erase(jt);
            } else {
              ch.coef[t] = next;
            }
          }
        }
      } else if (ch.level == static_cast<int>(k)) {
        ch.coef.erase(x);
      }
    }
    // Drop x.
    for (const auto& [t, v] : A.out[x]) B.in[t].erase(x);
    A.out[x].clear();
    if (k > 0)
      for (int z : A.in[x]) levels_[k - 1].out[z].erase(x);
    A.in[x].clear();
    A.alive[x] = 0;
    // Drop y.
    for (int s : B.in[y]) A.out[s].erase(y);
    B.in[y].clear();
    if (k + 2 < levels_.size())
      for (const auto& [t, v] : B.out[y]) levels_[k + 2].in[t].erase(y);
    B.out[y].clear();
    B.alive[y] = 0;
  }

  std::vector<Level> levels_;
  std::vector<Chain> chains_;
};

}  // namespace knotfoam::detail
