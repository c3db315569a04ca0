#pragma once

#include <map>
#include <utility>

#include "knotfoam/diagram.hpp"
#include "knotfoam/homology.hpp"
#include "knotfoam/khovanov.hpp"

namespace knotfoam {

// The Lee complex d_Kh + Phi, filtered by the Kh q-degree of generators.
struct FilteredComplex {
  PDCode pd;
  GradedChainComplex complex;
};

// A chain in one homological degree; keys index that degree's generators.
struct LeeClass {
  int degree = 0;
  std::map<std::size_t, BigInt> coef;
};

FilteredComplex build_lee(const PDCode& pd, const BuildOptions& opts = {});

// Total rational homology rank; throws RankMismatch unless it is 2^components.
int lee_rank(const FilteredComplex& fc, int components);

// s_a and s_b at the oriented resolution. Circles get a = 1 + X or b = 1 - X,
// alternating across each crossing; s_b swaps the two. Throws NotACycle if
// either fails to be a Lee cycle.
std::pair<LeeClass, LeeClass> oriented_resolution_generators(const FilteredComplex& fc);
std::pair<LeeClass, LeeClass> oriented_resolution_generators(const PDCode& pd);

// Apply the Lee differential to a chain.
LeeClass apply_differential(const FilteredComplex& fc, const LeeClass& c);

// j -> rank of H(F^j) -> H(C) for every j from min q - 1 to max q + 1.
std::map<int, int> filtration_profile(const FilteredComplex& fc);

// Largest j with [c] in the image of H(F^j); throws NotACycle for a
// non-cycle or a boundary.
int filtration_degree(const FilteredComplex& fc, const LeeClass& c);

struct SInvariantReport {
  int s = 0;
  int s_min = 0;
  int s_max = 0;
  int sa_degree = 0;
  int sb_degree = 0;
  std::map<int, int> profile;
};

SInvariantReport s_invariant_report(const PDCode& pd, const BuildOptions& opts = {});
int s_invariant(const PDCode& pd);

int slice_genus_lower_bound(int s);

}  // namespace knotfoam
