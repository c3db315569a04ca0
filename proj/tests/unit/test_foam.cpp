#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "knotfoam/errors.hpp"
#include "knotfoam/foam.hpp"
#include "test_support.hpp"

using namespace knotfoam;

namespace {

ClosedFoam sphere(Color c, int dots = 0, int squares = 0) {
  ClosedFoam f;
  f.facets.push_back({"S", c, 0, dots, squares, {}});
  return f;
}

ClosedFoam theta(int dots_u = 0) {
  ClosedFoam f;
  f.facets.push_back({"U", Color::Blue, 0, dots_u, 0, {"u"}});
  f.facets.push_back({"L", Color::Blue, 0, 0, 0, {"l"}});
  f.facets.push_back({"R", Color::Red, 0, 0, 0, {"r"}});
  f.bindings.push_back({"c", {"u", "l"}, "r", {}});
  return f;
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

const Relation& find_relation(const std::vector<Relation>& rels, const std::string& name) {
  for (const auto& r : rels)
    if (r.name == name) return r;
  throw std::runtime_error("missing fixture " + name);
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_NO_THROW(validate_foam(sphere(Color::Red)));
  EXPECT_EQ(kind_of([] { validate_foam(sphere(Color::Blue, 0, 1)); }), ErrorKind::MalformedFoam);
  ClosedFoam f = theta();
  f.bindings[0].red_page = "nowhere";
  EXPECT_EQ(kind_of([&] { validate_foam(f); }), ErrorKind::MalformedFoam);
}

TEST(Components, Examples) {
  EXPECT_EQ(blue_components(sphere(Color::Blue)).size(), 1u);
  ClosedFoam two;
  two.facets.push_back({"A", Color::Blue, 0, 0, 0, {}});
  two.facets.push_back({"B", Color::Blue, 0, 0, 0, {}});
  EXPECT_EQ(blue_components(two).size(), 2u);
  EXPECT_EQ(blue_components(theta()).size(), 1u);
}

TEST(Colorings, Examples) {
  EXPECT_EQ(enumerate_colorings(sphere(Color::Blue)).size(), 2u);
  auto red = enumerate_colorings(sphere(Color::Red));
  ASSERT_EQ(red.size(), 1u);
  EXPECT_TRUE(red[0].assignment.empty());
  EXPECT_EQ(enumerate_colorings(theta()).size(), 2u);
}

TEST(Colorings, EulerCharacteristics) {
  Coloring one{{{"S", 1}}};
  EXPECT_EQ(chi_subsurface(sphere(Color::Blue), one, Subsurface::Sigma1), 2);
  EXPECT_EQ(chi_subsurface(sphere(Color::Red), {}, Subsurface::SigmaB), 0);
  for (const auto& c : enumerate_colorings(theta())) EXPECT_EQ(chi_subsurface(theta(), c, Subsurface::SigmaB), 2);
}

TEST(Colorings, PageOrderCount) {
  EXPECT_EQ(count_n12(sphere(Color::Red), {}), 0);
  EXPECT_EQ(count_n12(sphere(Color::Blue), Coloring{{{"S", 1}}}), 0);
  EXPECT_EQ(count_n12(theta(), Coloring{{{"U", 1}, {"L", 2}}}), 1);
}

TEST(Evaluate, Spheres) {
  EXPECT_EQ(evaluate_foam(sphere(Color::Red)), IntPoly2(-1));
  EXPECT_EQ(evaluate_foam(sphere(Color::Blue)), IntPoly2(0));
  EXPECT_EQ(evaluate_foam(sphere(Color::Blue, 1)), IntPoly2(-1));
  EXPECT_EQ(evaluate_foam(sphere(Color::Blue, 2)), -IntPoly2::e1());
}

TEST(Evaluate, Theta) {
  EXPECT_EQ(evaluate_foam(theta()), IntPoly2(0));
  EXPECT_TRUE(is_symmetric(evaluate_foam(theta(1))));
}

TEST(Evaluate, TwoDotsAgreeWithDecorationRelation) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    ClosedFoam f = random_foam(rng);
    for (std::size_t k = 0; k < f.facets.size(); ++k) {
      if (f.facets[k].color != Color::Blue) continue;
      ClosedFoam two = f, one = f, none = f;
      two.facets[k].dots += 2;
      one.facets[k].dots += 1;
      EXPECT_EQ(evaluate_foam(two), IntPoly2::e1() * evaluate_foam(one) - IntPoly2::e2() * evaluate_foam(none));
      break;
    }
  }
}

TEST(Evaluate, RedDecorationsMultiply) {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 60; ++i) {
    ClosedFoam f = random_foam(rng);
    for (std::size_t k = 0; k < f.facets.size(); ++k) {
      if (f.facets[k].color != Color::Red) continue;
      ClosedFoam g = f;
      g.facets[k].dots += 2;
      g.facets[k].squares += 1;
      EXPECT_EQ(evaluate_foam(g), evaluate_foam(f) * IntPoly2::e1().pow(2) * IntPoly2::e2());
      ++checked;
      break;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Evaluate, RandomFoamsAreSymmetric) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    ClosedFoam f = random_foam(rng);
    ASSERT_LE(f.facets.size(), 8u);
    IntPoly2 v;
    ASSERT_NO_THROW(v = evaluate_foam(f));
    EXPECT_TRUE(is_symmetric(v));
    EXPECT_EQ(enumerate_colorings(f).size(), std::size_t{1} << blue_components(f).size());
    for (const auto& c : enumerate_colorings(f)) {
      EXPECT_EQ(chi_subsurface(f, c, Subsurface::Sigma1) % 2, 0);
      EXPECT_EQ(chi_subsurface(f, c, Subsurface::SigmaB) % 2, 0);
    }
  }
}

TEST(Closure, CappedCylinder) {
  OpenFoam cyl;
  cyl.facets.push_back({"C", Color::Blue, 0, 0, 0, {"top", "bottom"}});
  cyl.free_boundary.push_back({"top", Color::Blue, "", {}});
  cyl.free_boundary.push_back({"bottom", Color::Blue, "", {}});
  EXPECT_EQ(evaluate_foam(cap_closure(cyl, {})), IntPoly2(0));
  EXPECT_EQ(evaluate_foam(cap_closure(cyl, {{"top", 1}})), IntPoly2(-1));
}

TEST(Closure, JsonRoundTrip) {
  for (const auto& path : knotfoam::testing::fixture_files("foams")) {
    if (path.find("bad-") != std::string::npos) continue;
    OpenFoam f = load_foam_file(path);
    OpenFoam g = foam_from_json(foam_to_json(f));
    EXPECT_EQ(evaluate_foam(to_closed(f)), evaluate_foam(to_closed(g))) << path;
  }
}

TEST(Relations, AllFixturesPass) {
  auto rels = relation_fixtures();
  EXPECT_GE(rels.size(), 20u);
  for (const auto& r : rels) {
    auto c = verify_local_relation(r.lhs, r.rhs, 2, r.contexts);
    EXPECT_TRUE(c.pass) << r.name << (c.witness ? " at " + c.witness->closure : "");
    EXPECT_GT(c.closures, 0u) << r.name;
  }
}

TEST(Relations, ZeroDotsStillPass) {
  for (const auto& r : relation_fixtures()) EXPECT_TRUE(verify_local_relation(r.lhs, r.rhs, 0, r.contexts).pass) << r.name;
}

TEST(Relations, FlippedRedNeckCuttingFails) {
  auto rels = relation_fixtures();
  Relation r = find_relation(rels, "neck-cutting-red");
  for (auto& t : r.rhs.terms) t.coeff = -t.coeff;
  auto c = verify_local_relation(r.lhs, r.rhs, 2, r.contexts);
  EXPECT_FALSE(c.pass);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_FALSE(c.witness->closure.empty());
  EXPECT_NE(c.witness->lhs_value, c.witness->rhs_value);
}

TEST(Relations, FlippedBlueNeckCuttingFails) {
  auto rels = relation_fixtures();
  Relation r = find_relation(rels, "neck-cutting-blue");
  r.rhs.terms.pop_back();
  EXPECT_FALSE(verify_local_relation(r.lhs, r.rhs, 2, r.contexts).pass);
}
