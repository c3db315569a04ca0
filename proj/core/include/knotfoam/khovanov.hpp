#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "knotfoam/diagram.hpp"
#include "knotfoam/polyring.hpp"

namespace knotfoam {

enum class Side { Kh, Lee };

// Column-major sparse integer matrix; each column sorted by row.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, long>>> col;

  long at(int r, int c) const;
  std::size_t nonzeros() const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);  // a * b

// A basis element: a cube vertex (bit j = smoothing at crossing j) and a
// labelling of its circles (bit c set = circle c carries X).
struct Generator {
  std::uint64_t state = 0;
  std::uint64_t labels = 0;
  int q = 0;
};

struct ChainGroup {
  int degree = 0;
  std::vector<Generator> gens;
};

// groups[k] sits in homological degree min_degree + k; d[k] maps groups[k]
// to groups[k + 1].
struct GradedChainComplex {
  Side side = Side::Kh;
  int min_degree = 0;
  int n_plus = 0;
  int n_minus = 0;
  std::vector<ChainGroup> groups;
  std::vector<SparseMatrix> d;

  std::size_t generator_count() const;
  // Index of the group holding homological degree i, or -1.
  int group_index(int degree) const;
};

// Linear map on labels for one cube edge. Input and output are bitmasks
// over the involved circles: merge takes (a, b) bits 0 and 1 to bit 0;
// split takes bit 0 to bits 0 and 1.
enum class EdgeKind { Merge, Split };
std::vector<std::pair<unsigned, long>> edge_map(EdgeKind kind, Side side, unsigned input);

struct BuildOptions {
  int max_crossings = 14;
  int threads = 1;
};

GradedChainComplex build_complex(const PDCode& pd, Side side, const BuildOptions& opts = {});

// Sign of the cube edge from vertex v flipping crossing j.
int edge_sign(std::uint64_t v, int j);

LaurentQ graded_euler_characteristic(const GradedChainComplex& c);

// Independent state sum (-1)^{n-} q^{n+ - 2n-} sum_s (-q)^{|s|} (q + 1/q)^{circles},
// counting circles by walking the smoothed diagram.
LaurentQ kauffman_oracle(const PDCode& pd, int max_crossings = 14);

// Checks d o d = 0, that Kh entries preserve q, and that Lee entries either
// preserve q or raise it by exactly 4. Returns a description of the first
// violation or an empty string.
std::string audit_complex(const GradedChainComplex& c);

}  // namespace knotfoam
