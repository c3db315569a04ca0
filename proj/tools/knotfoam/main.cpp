#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  namespace kc = knotfoam::cli;
  CLI::App app{"Exact foam evaluation and Khovanov, Lee and s-invariant computations"};
  app.set_version_flag("--version", std::string(kc::version()));
  app.require_subcommand(1);

  kc::InvariantsOptions inv;
  std::string pd_text, braid_text;
  std::vector<std::string> skip;
  auto* invariants = app.add_subcommand("invariants", "Khovanov homology, Jones polynomial, Lee rank and s");
  auto* pd_opt = invariants->add_option("--pd", pd_text, "PD code, e.g. \"X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]\"");
  auto* braid_opt = invariants->add_option("--braid", braid_text, "braid word, e.g. \"1 1 1\" or \"1 -2 1 -2\"");
  pd_opt->excludes(braid_opt);
  invariants->add_option("--strands", inv.strands, "number of braid strands (default: largest generator + 1)");
  invariants->add_option("--format", inv.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  invariants->add_option("--threads", inv.threads, "worker threads for the cube of resolutions")
      ->check(CLI::PositiveNumber);
  invariants->add_option("--cache", inv.cache_dir, "result cache directory (default: $KNOTFOAM_CACHE)");
  invariants->add_option("--max-crossings", inv.max_crossings, "refuse diagrams with more crossings")
      ->check(CLI::NonNegativeNumber);
  invariants->add_option("--skip", skip, "skip lee and/or s")->check(CLI::IsMember({"lee", "s"}));
  invariants->add_flag("--timings", inv.timings, "report wall-clock timings");

  std::string foam_path;
  auto* eval = app.add_subcommand("eval-foam", "evaluate a closed foam given as JSON");
  eval->add_option("file", foam_path, "foam JSON file")->required();

  std::string graph_path;
  auto* gdim = app.add_subcommand("graph-dim", "graded dimension of a trivalent graph given as JSON");
  gdim->add_option("file", graph_path, "graph JSON file")->required();

  int max_dots = 2;
  std::string relations_dir;
  auto* verify = app.add_subcommand("verify-relations", "check every local relation fixture");
  verify->add_option("--max-dots", max_dots, "dots per cap in the closure family")->check(CLI::NonNegativeNumber);
  verify->add_option("--relations", relations_dir, "fixture directory (default: bundled fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kc::kExitParse;
  }

  if (*invariants) {
    if (*pd_opt) inv.pd = pd_text;
    if (*braid_opt) {
      inv.braid = braid_text;
      if (inv.strands == 0) {
        int m = 0;
        try {
          for (int g : knotfoam::parse_braid(braid_text)) m = std::max(m, std::abs(g));
        } catch (const std::exception&) {
        }
        inv.strands = m + 1;
      }
    }
    for (const auto& s : skip) {
      if (s == "lee") inv.skip_lee = true;
      if (s == "s") inv.skip_s = true;
    }
    if (inv.cache_dir.empty())
      if (const char* env = std::getenv("KNOTFOAM_CACHE")) inv.cache_dir = env;
    return kc::run_invariants(inv, std::cout, std::cerr);
  }
  if (*eval) return kc::run_eval_foam(foam_path, std::cout, std::cerr);
  if (*gdim) return kc::run_graph_dim(graph_path, std::cout, std::cerr);
  if (*verify) return kc::run_verify_relations(max_dots, relations_dir, std::cout, std::cerr);
  return kc::kExitParse;
}
