#include <gtest/gtest.h>

#include <random>
#include <set>

#include "knotfoam/errors.hpp"
#include "knotfoam/graphs.hpp"
#include "test_support.hpp"

using namespace knotfoam;

namespace {

std::vector<TrivalentGraph> fixtures() {
  std::vector<TrivalentGraph> out;
  for (const auto& p : knotfoam::testing::fixture_files("graphs"))
    if (p.find("bad-") == std::string::npos) out.push_back(load_graph_file(p));
  return out;
}

TrivalentGraph theta() { return web_from_diagram(braid_to_pd({1}, 2), {true}); }

int red_count(const TrivalentGraph& g) { return g.red_edge_count() + g.red_circles; }

}  // namespace

TEST(BlueLoops, Examples) {
  EXPECT_EQ(blue_loop_count(blue_circles_graph(1)), 1);
  EXPECT_EQ(blue_loop_count(theta()), 1);
  EXPECT_EQ(blue_loop_count(blue_circles_graph(4)), 4);
}

TEST(Evaluation, Examples) {
  EXPECT_EQ(graph_evaluation(blue_circles_graph(1)), LaurentQ::circle());
  EXPECT_EQ(graph_evaluation(blue_circles_graph(2)), LaurentQ::parse("q^2 + 2 + q^-2"));
  EXPECT_EQ(graph_evaluation(blue_circles_graph(0)), LaurentQ(1));
}

TEST(Faces, BigonFound) {
  auto f = find_bigon_or_square(theta());
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->kind, FaceKind::CentralBigon);
  EXPECT_FALSE(find_bigon_or_square(blue_circles_graph(3)).has_value());
}

TEST(Faces, EulerFormula) {
  for (const auto& g : fixtures()) {
    if (g.vertex_count() == 0) continue;
    long v = static_cast<long>(g.vertex_count());
    long e = static_cast<long>(g.half_edges.size()) / 2;
    long f = static_cast<long>(graph_faces(g).size());
    EXPECT_EQ((v - e + f) % 2, 0);
    EXPECT_GE(v - e + f, 2);
  }
}

TEST(Reduce, CentralBigonFactor) {
  auto g = theta();
  auto face = find_bigon_or_square(g);
  ASSERT_TRUE(face);
  auto r = reduce_step(g, *face);
  EXPECT_EQ(r.factor, LaurentQ::circle());
  EXPECT_LT(red_count(r.graph), red_count(g));
}

TEST(Reduce, RejectsNonFace) {
  auto g = theta();
  FaceDescriptor bogus{FaceKind::SquareOne, {0}};
  try {
    reduce_step(g, bogus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidFace);
  }
}

TEST(Reduce, EveryKindSeenAndCountDrops) {
  std::set<FaceKind> seen;
  std::mt19937_64 rng(17);
  auto graphs = fixtures();
  for (int i = 0; i < 200; ++i) graphs.push_back(random_graph(rng, 12));
  for (auto g : graphs) {
    while (red_count(g) > 0) {
      auto face = find_bigon_or_square(g);
      ASSERT_TRUE(face.has_value());
      seen.insert(face->kind);
      auto r = reduce_step(g, *face);
      ASSERT_LT(red_count(r.graph), red_count(g));
      g = r.graph;
    }
  }
  EXPECT_TRUE(seen.count(FaceKind::CentralBigon));
  EXPECT_TRUE(seen.count(FaceKind::SideBigon));
  EXPECT_TRUE(seen.count(FaceKind::SquareOne) || seen.count(FaceKind::SquareTwo));
}

TEST(GradedDimension, Examples) {
  EXPECT_EQ(graded_dimension(blue_circles_graph(1)), LaurentQ::circle());
  EXPECT_EQ(graded_dimension(theta()), LaurentQ::circle());
}

TEST(GradedDimension, FixturesMatchEvaluation) {
  for (const auto& g : fixtures()) EXPECT_EQ(graded_dimension(g), graph_evaluation(g));
}

TEST(GradedDimension, RandomGraphsMatchEvaluation) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 12);
    ASSERT_LE(g.vertex_count(), 12u);
    EXPECT_EQ(graded_dimension(g), LaurentQ::circle().pow(static_cast<unsigned>(blue_loop_count(g))));
  }
}

TEST(CupBasis, Examples) {
  auto one = cup_basis(blue_circles_graph(1));
  ASSERT_EQ(one.size(), 2u);
  std::multiset<int> degs;
  for (const auto& e : one) degs.insert(e.q_degree);
  EXPECT_EQ(degs, (std::multiset<int>{-1, 1}));
  degs.clear();
  for (const auto& e : cup_basis(blue_circles_graph(2))) degs.insert(e.q_degree);
  EXPECT_EQ(degs, (std::multiset<int>{-2, 0, 0, 2}));
  auto empty = cup_basis(blue_circles_graph(0));
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty[0].q_degree, 0);
}

TEST(CupBasis, SumsToGradedDimension) {
  for (const auto& g : fixtures()) {
    LaurentQ sum;
    for (const auto& e : cup_basis(g)) sum += LaurentQ::q(e.q_degree);
    EXPECT_EQ(sum, graded_dimension(g));
  }
}

TEST(GraphJson, RoundTrip) {
  for (const auto& g : fixtures()) {
    auto h = graph_from_json(graph_to_json(g));
    EXPECT_EQ(graph_to_json(h), graph_to_json(g));
    EXPECT_EQ(graded_dimension(h), graded_dimension(g));
  }
}

TEST(GraphJson, MalformedRejected) {
  try {
    load_graph_file(knotfoam::testing::data_dir() + "/graphs/bad-two-red.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedGraph);
  }
  try {
    graph_from_json("{\"vertices\": [");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}
