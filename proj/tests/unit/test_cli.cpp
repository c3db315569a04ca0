#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "knotfoam/foam.hpp"
#include "test_support.hpp"

using namespace knotfoam;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code;
  std::string out;
  std::string err;
};

CmdResult invariants(cli::InvariantsOptions o) {
  std::ostringstream out, err;
  int code = cli::run_invariants(o, out, err);
  return {code, out.str(), err.str()};
}

cli::InvariantsOptions braid_opts(const std::string& word, int strands) {
  cli::InvariantsOptions o;
  o.braid = word;
  o.strands = strands;
  o.format = "json";
  return o;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("knotfoam-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string foam(const std::string& name) { return knotfoam::testing::data_dir() + "/foams/" + name + ".json"; }

}  // namespace

TEST(Invariants, TrefoilJson) {
  CmdResult r = invariants(braid_opts("1 1 1", 2));
  ASSERT_EQ(r.code, 0) << r.err;
  auto rec = cli::record_from_json(r.out);
  EXPECT_EQ(rec.lee_rank, 2);
  ASSERT_TRUE(rec.s);
  EXPECT_EQ(std::abs(*rec.s), 2);
  EXPECT_EQ(rec.slice_genus_lower_bound, 1);
  EXPECT_EQ(rec.jones, rec.khovanov.euler_characteristic());
}

TEST(Invariants, Unknot) {
  cli::InvariantsOptions o;
  o.pd = "";
  o.format = "json";
  CmdResult r = invariants(o);
  ASSERT_EQ(r.code, 0) << r.err;
  auto rec = cli::record_from_json(r.out);
  EXPECT_EQ(rec.jones, LaurentQ::circle());
  EXPECT_EQ(rec.s, 0);
}

TEST(Invariants, LinkHasNoS) {
  auto rec = cli::record_from_json(invariants(braid_opts("1 1", 2)).out);
  EXPECT_EQ(rec.lee_rank, 4);
  EXPECT_FALSE(rec.s.has_value());
  EXPECT_FALSE(rec.slice_genus_lower_bound.has_value());
}

TEST(Invariants, SkipFlags) {
  auto o = braid_opts("1 1 1", 2);
  o.skip_lee = true;
  o.skip_s = true;
  auto rec = cli::record_from_json(invariants(o).out);
  EXPECT_FALSE(rec.lee_rank.has_value());
  EXPECT_FALSE(rec.s.has_value());
}

TEST(Invariants, RecordRoundTrip) {
  auto o = braid_opts("1 -2 1 -2", 3);
  o.timings = true;
  CmdResult r = invariants(o);
  auto rec = cli::record_from_json(r.out);
  EXPECT_FALSE(rec.timings.empty());
  EXPECT_EQ(cli::record_from_json(cli::to_json(rec)), rec);
  rec.timings.clear();
  EXPECT_EQ(cli::to_json(cli::record_from_json(cli::to_json(rec))), cli::to_json(rec));
}

TEST(Invariants, ExitCodes) {
  cli::InvariantsOptions bad;
  bad.pd = "X[1,2,3";
  CmdResult r = invariants(bad);
  EXPECT_EQ(r.code, cli::kExitParse);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);

  cli::InvariantsOptions none;
  EXPECT_EQ(invariants(none).code, cli::kExitParse);

  auto big = braid_opts("1 1 1 1 1 1", 2);
  big.max_crossings = 5;
  r = invariants(big);
  EXPECT_EQ(r.code, cli::kExitTooLarge);
  EXPECT_NE(r.err.find("TooLarge"), std::string::npos);

  EXPECT_EQ(invariants(braid_opts("3", 2)).code, cli::kExitParse);

  cli::InvariantsOptions virt;
  virt.pd = "X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]";
  r = invariants(virt);
  EXPECT_EQ(r.code, cli::kExitParse);
  EXPECT_NE(r.err.find("planar"), std::string::npos);
}

TEST(Invariants, TableLayout) {
  auto o = braid_opts("1 1 1", 2);
  o.format = "table";
  CmdResult r = invariants(o);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("   i     q  betti  torsion"), std::string::npos);
  EXPECT_NE(r.out.find("   3     7      0  Z/2"), std::string::npos);
}

TEST(Invariants, DeterministicAcrossThreads) {
  auto one = braid_opts("1 2 1 2 1 2 1 2", 3);
  auto four = one;
  four.threads = 4;
  EXPECT_EQ(invariants(one).out, invariants(four).out);
  EXPECT_EQ(invariants(one).out, invariants(one).out);
}

TEST(Cache, SecondRunIdentical) {
  fs::path dir = fresh_dir("cache");
  auto o = braid_opts("1 -2 1 -2", 3);
  o.cache_dir = dir.string();
  CmdResult first = invariants(o);
  ASSERT_EQ(first.code, 0);
  ASSERT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
  CmdResult second = invariants(o);
  EXPECT_EQ(second.out, first.out);

  // A hit is really served from disk: tamper with the entry and see it echoed.
  fs::path entry = fs::directory_iterator(dir)->path();
  auto rec = cli::record_from_json(second.out);
  rec.n_plus = 99;
  std::ofstream(entry) << cli::to_json(rec);
  EXPECT_EQ(cli::record_from_json(invariants(o).out).n_plus, 99);

  // Cache-vs-recompute equivalence.
  fs::remove(entry);
  auto uncached = o;
  uncached.cache_dir.clear();
  EXPECT_EQ(invariants(o).out, invariants(uncached).out);
  fs::remove_all(dir);
}

TEST(Cache, KeyDependsOnInputAndFlags) {
  auto o = braid_opts("1 1 1", 2);
  PDCode t = braid_to_pd({1, 1, 1}, 2);
  PDCode m = braid_to_pd({-1, -1, -1}, 2);
  EXPECT_NE(cli::cache_key(t, o), cli::cache_key(m, o));
  auto skip = o;
  skip.skip_s = true;
  EXPECT_NE(cli::cache_key(t, o), cli::cache_key(t, skip));
  EXPECT_EQ(cli::cache_key(t, o), cli::cache_key(t, o));
}

TEST(EvalFoam, Fixtures) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_eval_foam(foam("red-sphere"), out, err), 0);
  EXPECT_EQ(out.str(), "-1\nsymmetric: yes\n");
  out.str("");
  EXPECT_EQ(cli::run_eval_foam(foam("dotted-blue-sphere"), out, err), 0);
  EXPECT_EQ(out.str(), "-1\nsymmetric: yes\n");
  out.str("");
  EXPECT_EQ(cli::run_eval_foam(foam("theta"), out, err), 0);
  EXPECT_EQ(out.str(), "0\nsymmetric: yes\n");
}

TEST(EvalFoam, SchemaErrors) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_eval_foam(foam("bad-open"), out, err), cli::kExitParse);
  EXPECT_EQ(cli::run_eval_foam(foam("does-not-exist"), out, err), cli::kExitParse);
}

TEST(GraphDim, Fixture) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_graph_dim(knotfoam::testing::data_dir() + "/graphs/trefoil-webs.json", out, err), 0);
  EXPECT_NE(out.str().find("blue loops: 3"), std::string::npos);
  EXPECT_NE(out.str().find("equal"), std::string::npos);
  EXPECT_EQ(cli::run_graph_dim(knotfoam::testing::data_dir() + "/graphs/bad-two-red.json", out, err),
            cli::kExitParse);
}

TEST(VerifyRelations, DefaultAndZeroDots) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_verify_relations(2, "", out, err), 0) << out.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
  std::ostringstream out0;
  EXPECT_EQ(cli::run_verify_relations(0, "", out0, err), 0);
}

TEST(VerifyRelations, CorruptedFixture) {
  fs::path dir = fresh_dir("relations");
  fs::copy(default_relations_dir(), dir, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  fs::path target = dir / "neck-cutting-red.json";
  std::ifstream in(target);
  std::stringstream ss;
  ss << in.rdbuf();
  in.close();
  std::string text = ss.str();
  auto at = text.find("\"coeff\": -1");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 11, "\"coeff\": 1");
  std::ofstream(target) << text;
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_verify_relations(2, dir.string(), out, err), cli::kExitVerifyFailed);
  EXPECT_NE(out.str().find("FAIL neck-cutting-red"), std::string::npos);
  EXPECT_NE(out.str().find("witness"), std::string::npos);
  fs::remove_all(dir);
}
