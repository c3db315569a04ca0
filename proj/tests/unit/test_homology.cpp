#include <gtest/gtest.h>

#include <random>

#include "knotfoam/errors.hpp"
#include "knotfoam/homology.hpp"
#include "test_support.hpp"

using namespace knotfoam;
using knotfoam::testing::test_diagrams;

namespace {

// gcd of all k x k minors, k <= 3, by cofactor expansion.
BigInt det(const DenseMatrix& m, const std::vector<int>& r, const std::vector<int>& c) {
  if (r.size() == 1) return m[r[0]][c[0]];
  BigInt sum = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<int> rr(r.begin() + 1, r.end()), cc;
    for (std::size_t t = 0; t < c.size(); ++t)
      if (t != j) cc.push_back(c[t]);
    BigInt term = m[r[0]][c[j]] * det(m, rr, cc);
    sum += j % 2 ? BigInt(-term) : term;
  }
  return sum;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

BigInt minor_gcd(const DenseMatrix& m, int k) {
  std::vector<std::vector<int>> rs, cs;
  std::vector<int> cur;
  subsets(static_cast<int>(m.size()), k, 0, cur, rs);
  subsets(static_cast<int>(m[0].size()), k, 0, cur, cs);
  BigInt g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      BigInt d = det(m, r, c);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

GradedChainComplex multiplication_by(long n) {
  GradedChainComplex c;
  c.groups = {ChainGroup{0, {Generator{0, 0, 0}}}, ChainGroup{1, {Generator{1, 0, 0}}}};
  SparseMatrix d;
  d.rows = d.cols = 1;
  d.col = {{{0, n}}};
  c.d = {d};
  return c;
}

}  // namespace

TEST(SNF, Examples) {
  EXPECT_EQ(smith_normal_form({{2, 0}, {0, 0}}).factors, (std::vector<BigInt>{2}));
  EXPECT_EQ(smith_normal_form({{1, 2}, {3, 4}}).factors, (std::vector<BigInt>{1, 2}));
  EXPECT_TRUE(smith_normal_form({{0, 0}, {0, 0}}).factors.empty());
}

TEST(SNF, MatchesMinorGcds) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int it = 0; it < 300; ++it) {
    int r = dim(rng), c = dim(rng);
    DenseMatrix m(r, std::vector<BigInt>(c));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng) * (rng() % 3 == 0 ? 0 : 1);
    auto f = smith_normal_form(m).factors;
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
    EXPECT_EQ(f.size(), rational_rank(m));
    BigInt prod = 1;
    for (int k = 1; k <= std::min({r, c, 3}); ++k) {
      BigInt g = minor_gcd(m, k);
      if (k <= static_cast<int>(f.size())) {
        prod *= f[k - 1];
        EXPECT_EQ(prod, g);
      } else {
        EXPECT_EQ(g, 0);
      }
    }
  }
}

TEST(PrimePowers, Split) {
  EXPECT_EQ(prime_power_parts(12), (std::vector<BigInt>{3, 4}));
  EXPECT_EQ(prime_power_parts(2), (std::vector<BigInt>{2}));
  EXPECT_EQ(prime_power_parts(360), (std::vector<BigInt>{5, 8, 9}));
}

TEST(Homology, ToyTorsion) {
  HomologyTable t = integral_homology(multiplication_by(2));
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.entries.at({1, 0}).betti, 0);
  EXPECT_EQ(t.entries.at({1, 0}).torsion, (std::vector<BigInt>{2}));
  EXPECT_TRUE(integral_homology(multiplication_by(-1)).entries.empty());
}

TEST(Homology, RejectsNonComplex) {
  GradedChainComplex c;
  c.groups = {ChainGroup{0, {Generator{0, 0, 0}}}, ChainGroup{1, {Generator{1, 0, 0}}},
              ChainGroup{2, {Generator{3, 0, 0}}}};
  SparseMatrix d;
  d.rows = d.cols = 1;
  d.col = {{{0, 1}}};
  c.d = {d, d};
  try {
    integral_homology(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAComplex);
  }
}

TEST(Homology, Unknot) {
  auto t = integral_homology(build_complex(parse_pd(""), Side::Kh));
  EXPECT_EQ(t.entries.size(), 2u);
  EXPECT_EQ(t.entries.at({0, 1}).betti, 1);
  EXPECT_EQ(t.entries.at({0, -1}).betti, 1);
  EXPECT_EQ(t.torsion_count(), 0u);
  auto rb = rational_betti(build_complex(parse_pd(""), Side::Kh));
  EXPECT_EQ(rb, (std::map<std::pair<int, int>, int>{{{0, -1}, 1}, {{0, 1}, 1}}));
}

TEST(Homology, Unlink) {
  auto t = integral_homology(build_complex(braid_to_pd({}, 2), Side::Kh));
  EXPECT_EQ(t.total_rank(), 4);
  EXPECT_EQ(t.entries.size(), 3u);  // q = -2, 0 (twice), 2
}

TEST(Homology, Trefoil) {
  auto c = build_complex(braid_to_pd({1, 1, 1}, 2), Side::Kh);
  auto t = integral_homology(c);
  EXPECT_EQ(t.total_rank(), 4);
  EXPECT_EQ(t.torsion_count(), 1u);
  EXPECT_EQ(t.entries.at({3, 7}).torsion, (std::vector<BigInt>{2}));
  for (auto key : {std::pair{0, 1}, std::pair{0, 3}, std::pair{2, 5}, std::pair{3, 9}})
    EXPECT_EQ(t.entries.at(key).betti, 1);
  EXPECT_EQ(t.euler_characteristic(), kauffman_oracle(braid_to_pd({1, 1, 1}, 2)));
}

TEST(Homology, FigureEightAndMirrorTrefoil) {
  auto f = integral_homology(build_complex(braid_to_pd({1, -2, 1, -2}, 3), Side::Kh));
  EXPECT_EQ(f.total_rank(), 6);
  EXPECT_EQ(f.torsion_count(), 2u);
  auto m = integral_homology(build_complex(braid_to_pd({-1, -1, -1}, 2), Side::Kh));
  EXPECT_EQ(m.total_rank(), 4);
  for (const auto& [key, e] : m.entries) EXPECT_LE(key.first, 0);
}

TEST(Homology, EulerAndRationalAgreement) {
  for (const auto& d : test_diagrams()) {
    auto c = build_complex(d.pd, Side::Kh);
    auto t = integral_homology(c);
    EXPECT_EQ(t.euler_characteristic(), graded_euler_characteristic(c)) << d.name;
    auto rb = rational_betti(c);
    std::map<std::pair<int, int>, int> from_integral;
    for (const auto& [key, e] : t.entries)
      if (e.betti) from_integral[key] = e.betti;
    EXPECT_EQ(rb, from_integral) << d.name;
  }
}

TEST(Homology, InvariantUnderMoves) {
  std::mt19937_64 rng(33);
  for (const auto& d : test_diagrams()) {
    if (d.pd.size() > 7) continue;
    auto base = integral_homology(build_complex(d.pd, Side::Kh));
    PDCode p = random_move(random_move(d.pd, rng), rng);
    EXPECT_EQ(integral_homology(build_complex(p, Side::Kh)), base) << d.name << " -> " << pd_to_string(p);
  }
}
