#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotfoam/diagram.hpp"
#include "knotfoam/homology.hpp"
#include "knotfoam/polyring.hpp"

namespace knotfoam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitTooLarge = 3;
inline constexpr int kExitInvariant = 4;

struct OutputRecord {
  std::string input_kind;  // "pd" or "braid"
  std::string input;
  int strands = 0;  // braid input only
  std::string pd;   // canonical PD text
  int components = 0;
  int n_plus = 0;
  int n_minus = 0;
  LaurentQ jones;
  HomologyTable khovanov;
  std::optional<int> lee_rank;
  std::optional<int> s;
  std::optional<int> slice_genus_lower_bound;
  std::map<std::string, double> timings;  // seconds; empty unless requested

  bool operator==(const OutputRecord& o) const = default;
};

std::string to_json(const OutputRecord& r);
OutputRecord record_from_json(const std::string& text);
std::string render_table(const OutputRecord& r);

struct InvariantsOptions {
  std::optional<std::string> pd;
  std::optional<std::string> braid;
  int strands = 0;
  std::string format = "table";
  int threads = 1;
  std::string cache_dir;  // empty: no cache
  int max_crossings = 14;
  bool skip_lee = false;
  bool skip_s = false;
  bool timings = false;
};

// Throws knotfoam::Error on bad input or a violated invariant.
OutputRecord compute_invariants(const InvariantsOptions& opts);

// Cache key: FNV-1a over the canonical PD, the flags that change the record,
// and the tool version.
std::string cache_key(const PDCode& pd, const InvariantsOptions& opts);

// Each command writes its result to out, diagnostics to err, and returns an
// exit code.
int run_invariants(const InvariantsOptions& opts, std::ostream& out, std::ostream& err);
int run_eval_foam(const std::string& path, std::ostream& out, std::ostream& err);
int run_graph_dim(const std::string& path, std::ostream& out, std::ostream& err);
int run_verify_relations(int max_dots, const std::string& directory, std::ostream& out, std::ostream& err);

// Exit code for a library error.
int exit_code_for(const std::exception& e);

const char* version();

}  // namespace knotfoam::cli
