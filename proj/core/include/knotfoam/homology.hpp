#pragma once

#include <map>
#include <utility>
#include <vector>

#include "knotfoam/khovanov.hpp"
#include "knotfoam/polyring.hpp"

namespace knotfoam {

using DenseMatrix = std::vector<std::vector<BigInt>>;  // row major

struct SNFResult {
  std::vector<BigInt> factors;  // nonzero invariant factors, d1 | d2 | ...
  std::size_t rank() const { return factors.size(); }
};

SNFResult smith_normal_form(DenseMatrix m);
std::size_t rational_rank(const DenseMatrix& m);

struct HomologyEntry {
  int betti = 0;
  std::vector<BigInt> torsion;  // prime-power orders, ascending
  bool operator==(const HomologyEntry& o) const = default;
};

// Keyed by (homological degree, q-degree); only nonzero groups are stored.
struct HomologyTable {
  std::map<std::pair<int, int>, HomologyEntry> entries;

  int total_rank() const;
  std::size_t torsion_count() const;
  // sum (-1)^i q^j betti(i, j)
  LaurentQ euler_characteristic() const;
  bool operator==(const HomologyTable& o) const = default;
};

// Throws NotAComplex when d o d != 0 or, for Kh complexes, a differential
// entry changes q.
void check_complex(const GradedChainComplex& c);

HomologyTable integral_homology(const GradedChainComplex& c);
std::map<std::pair<int, int>, int> rational_betti(const GradedChainComplex& c);

// Prime-power decomposition of n > 1, ascending.
std::vector<BigInt> prime_power_parts(BigInt n);

}  // namespace knotfoam
