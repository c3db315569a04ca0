#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <set>
#include <random>

#include "knotfoam/diagram.hpp"
#include "knotfoam/errors.hpp"
#include "knotfoam/khovanov.hpp"
#include "test_support.hpp"

using namespace knotfoam;
using knotfoam::testing::test_diagrams;

namespace {

// Independent union-find circle count: 0 joins slots (0,1),(2,3), 1 joins (0,3),(1,2).
int oracle_circles(const PDCode& pd, unsigned long long mask) {
  int maxl = 0;
  for (const auto& c : pd.crossings)
    for (int l : c) maxl = std::max(maxl, l);
  std::vector<int> parent(maxl + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (std::size_t k = 0; k < pd.size(); ++k) {
    const auto& c = pd.crossings[k];
    if ((mask >> k) & 1ULL) {
      unite(c[0], c[3]);
      unite(c[1], c[2]);
    } else {
      unite(c[0], c[1]);
      unite(c[2], c[3]);
    }
  }
  std::set<int> roots;
  for (const auto& c : pd.crossings)
    for (int l : c) roots.insert(find(l));
  return static_cast<int>(roots.size()) + pd.extra_circles;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::NotAComplex;
}

}  // namespace

TEST(ParsePd, Examples) {
  PDCode t = parse_pd("X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]");
  EXPECT_EQ(t.size(), 3u);
  // This code traces consistently but is not planar.
  EXPECT_EQ(kind_of([&] { check_planar(t); }), ErrorKind::InvalidDiagram);
  EXPECT_NO_THROW(check_planar(parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]")));
  PDCode u = parse_pd("");
  EXPECT_EQ(u.size(), 0u);
  EXPECT_EQ(u.extra_circles, 1);
  EXPECT_EQ(components(u).count, 1);
  PDCode kink = parse_pd("X[1,1,2,2]");
  EXPECT_EQ(components(kink).count, 1);
}

TEST(ParsePd, AlternateSyntax) {
  PDCode a = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]");
  EXPECT_EQ(parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]"), a);
  EXPECT_EQ(parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"), a);
  EXPECT_EQ(parse_pd(pd_to_string(a)), a);
}

TEST(ParsePd, Errors) {
  try {
    parse_pd("X[1,2,3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_GT(e.position(), 0u);
  }
  EXPECT_EQ(kind_of([] { parse_pd("X[1,2,3,4]"); }), ErrorKind::InvalidDiagram);
  EXPECT_EQ(kind_of([] { parse_pd("X[1,1,1,2];X[2,3,3,4]"); }), ErrorKind::InvalidDiagram);
}

TEST(Braid, Examples) {
  EXPECT_EQ(braid_to_pd({1, 1, 1}, 2).size(), 3u);
  PDCode one = braid_to_pd({1}, 2);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(components(one).count, 1);
  PDCode two = braid_to_pd({1, -1}, 2);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_EQ(components(two).count, 2);
  EXPECT_EQ(kauffman_oracle(two), LaurentQ::circle().pow(2));
  EXPECT_EQ(parse_braid("1 -2, 3"), (std::vector<int>{1, -2, 3}));
  EXPECT_EQ(kind_of([] { braid_to_pd({3}, 2); }), ErrorKind::InvalidBraid);
  EXPECT_EQ(kind_of([] { parse_braid("1 x"); }), ErrorKind::ParseError);
}

TEST(Signs, Examples) {
  Signs p = compute_signs(braid_to_pd({1, 1, 1}, 2));
  EXPECT_EQ(p.n_plus, 3);
  EXPECT_EQ(p.n_minus, 0);
  Signs m = compute_signs(braid_to_pd({-1, -1, -1}, 2));
  EXPECT_EQ(m.n_plus, 0);
  EXPECT_EQ(m.n_minus, 3);
  Signs z = compute_signs(braid_to_pd({1, -1}, 2));
  EXPECT_EQ(z.n_plus, 1);
  EXPECT_EQ(z.n_minus, 1);
}

TEST(Signs, MirrorSwaps) {
  for (const auto& d : test_diagrams()) {
    Signs a = compute_signs(d.pd), b = compute_signs(mirror(d.pd));
    EXPECT_EQ(a.n_plus, b.n_minus) << d.name;
    EXPECT_EQ(a.n_minus, b.n_plus) << d.name;
  }
}

TEST(Smoothing, UnknotAndTrefoil) {
  EXPECT_EQ(smooth_state(parse_pd(""), State{}).circles, 1);
  PDCode t = braid_to_pd({1, 1, 1}, 2);
  EXPECT_EQ(smooth_state(t, State{{0, 0, 0}}).circles, oracle_circles(t, 0));
  EXPECT_EQ(smooth_state(t, State{{1, 1, 1}}).circles, oracle_circles(t, 7));
  EXPECT_EQ(oracle_circles(t, 0), 2);
  EXPECT_EQ(oracle_circles(t, 7), 3);
}

TEST(Smoothing, AgreesWithOracle) {
  for (const auto& d : test_diagrams()) {
    unsigned long long states = 1ULL << d.pd.size();
    for (unsigned long long m = 0; m < states; m += 1 + states / 64) {
      EXPECT_EQ(smoothing_circles(d.pd, m), oracle_circles(d.pd, m)) << d.name;
      State st;
      for (std::size_t k = 0; k < d.pd.size(); ++k) st.assignment.push_back(static_cast<int>((m >> k) & 1ULL));
      SmoothingResult r = smooth_state(d.pd, st);
      EXPECT_EQ(r.circles, oracle_circles(d.pd, m)) << d.name;
    }
  }
}

TEST(Smoothing, OrientedStateGivesSeifertCircles) {
  struct Case {
    std::vector<int> word;
    int strands;
  };
  for (const auto& c : std::vector<Case>{{{1, 1, 1}, 2}, {{1, -2, 1, -2}, 3}, {{1, 2, 3, -2}, 4}, {{-1, -1}, 2}}) {
    PDCode pd = braid_to_pd(c.word, c.strands);
    State st = oriented_state(pd);
    EXPECT_EQ(smooth_state(pd, st).circles, c.strands);
    int ones = 0;
    for (int a : st.assignment) ones += a;
    EXPECT_EQ(ones - compute_signs(pd).n_minus, 0);
  }
}

TEST(Moves, R1OnUnknot) {
  PDCode u = parse_pd("");
  for (Move m : {Move::R1Plus, Move::R1Minus}) {
    PDCode k = reidemeister_move(u, m, MoveSite{0, 0, -1, 0});
    EXPECT_EQ(k.size(), 1u);
    EXPECT_EQ(kauffman_oracle(k), kauffman_oracle(u));
  }
}

TEST(Moves, R2ThenCancel) {
  PDCode t = braid_to_pd({1, 1, 1}, 2);
  auto faces = pd_faces(t);
  bool done = false;
  for (std::size_t f = 0; f < faces.size() && !done; ++f) {
    const auto& face = faces[f];
    for (std::size_t i = 0; i < face.size() && !done; ++i)
      for (std::size_t j = i + 1; j < face.size() && !done; ++j) {
        if (face[i].arc == face[j].arc) continue;
        PDCode bigger =
            reidemeister_move(t, Move::R2, MoveSite{face[i].arc, face[j].arc, static_cast<int>(f), 0});
        ASSERT_EQ(bigger.size(), t.size() + 2);
        PDCode back = cancel_r2(bigger, static_cast<int>(t.size()), static_cast<int>(t.size()) + 1);
        EXPECT_EQ(canonical_labels(back), canonical_labels(t));
        done = true;
      }
  }
  EXPECT_TRUE(done);
}

TEST(Moves, RandomMovesKeepComponentsAndJones) {
  std::mt19937_64 rng(9);
  for (const auto& d : test_diagrams()) {
    if (d.pd.size() > 7) continue;
    PDCode p = d.pd;
    for (int i = 0; i < 3; ++i) {
      p = random_move(p, rng);
      EXPECT_NO_THROW(validate_pd(p));
      EXPECT_NO_THROW(check_planar(p));
      EXPECT_EQ(components(p).count, components(d.pd).count) << d.name;
    }
    EXPECT_EQ(kauffman_oracle(p), kauffman_oracle(d.pd)) << d.name;
  }
}

TEST(Random, DiagramsAreValid) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    PDCode p = random_diagram(rng, 8);
    EXPECT_LE(p.size(), 8u);
    EXPECT_NO_THROW(validate_pd(p));
    EXPECT_NO_THROW(check_planar(p));
  }
}
