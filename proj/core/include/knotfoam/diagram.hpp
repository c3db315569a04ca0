#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace knotfoam {

// Planar diagram code. Each crossing lists four arc labels counterclockwise,
// starting at the incoming under-strand. extra_circles counts split unknotted
// components that meet no crossing.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;
  int extra_circles = 0;

  std::size_t size() const { return crossings.size(); }
  bool operator==(const PDCode& o) const = default;
};

// Where an arc starts and ends: crossing index and slot 0..3.
struct ArcEnds {
  int tail_crossing = -1;
  int tail_slot = -1;
  int head_crossing = -1;
  int head_slot = -1;
};

struct Orientation {
  std::map<int, ArcEnds> arcs;
  // +1 when the over strand runs from slot 3 to slot 1, otherwise -1.
  std::vector<int> sign;
};

struct Signs {
  int n_plus = 0;
  int n_minus = 0;
  std::vector<int> sign;
};

struct State {
  std::vector<int> assignment;  // one entry in {0, 1} per crossing
};

struct SmoothingResult {
  int circles = 0;
  std::map<int, int> membership;  // arc -> circle id, ids in order of first arc
};

PDCode parse_pd(const std::string& text);
// Checks label multiplicity and traces orientation; throws InvalidDiagram.
void validate_pd(const PDCode& pd);
// Throws InvalidDiagram unless every connected piece has V - E + F = 2 for
// the faces traced from the rotation at each crossing. Codes that fail are
// virtual diagrams; they parse but the cube of resolutions rejects them.
void check_planar(const PDCode& pd);
std::string pd_to_string(const PDCode& pd);

PDCode braid_to_pd(const std::vector<int>& word, int strands);
std::vector<int> parse_braid(const std::string& text);

Orientation orient(const PDCode& pd);
Signs compute_signs(const PDCode& pd);

// Link components: count includes extra circles; ids map each arc label.
struct Components {
  int count = 0;
  std::map<int, int> id;
};
Components components(const PDCode& pd);

// 0-smoothing joins slots (0,1) and (2,3); 1-smoothing joins (0,3) and (1,2).
SmoothingResult smooth_state(const PDCode& pd, const State& st);
// Same count from a bitmask (bit j is crossing j); no membership map.
int smoothing_circles(const PDCode& pd, unsigned long long mask);

// The state that agrees with the orientation: 0 at positive crossings and 1 at
// negative ones. Its circles are the Seifert circles.
State oriented_state(const PDCode& pd);

PDCode mirror(const PDCode& pd);
// Labels renumbered 1..n in order of first appearance.
PDCode canonical_labels(const PDCode& pd);

// Faces of the diagram; each boundary arc is listed with whether the face is
// on the left of the arc's orientation.
struct FaceArc {
  int arc = 0;
  bool left = false;
};
std::vector<std::vector<FaceArc>> pd_faces(const PDCode& pd);

enum class Move { R1Plus, R1Minus, R2 };

// R1: arc (0 selects a crossingless circle), variant picks the side of the
// kink. R2: arc is pushed across arc2 inside face (or the first shared face
// when face is -1); variant 0 puts arc on top, 1 puts arc2 on top.
struct MoveSite {
  int arc = 0;
  int arc2 = 0;
  int face = -1;
  int variant = 0;
};

PDCode reidemeister_move(const PDCode& pd, Move move, const MoveSite& site);
// Removes crossings i and j, which must form a bigon, and reconnects strands.
PDCode cancel_r2(const PDCode& pd, int i, int j);
// Random applicable R1 or R2 move.
PDCode random_move(const PDCode& pd, std::mt19937_64& rng, Move* applied = nullptr);

// Random braid closure with the given crossing bound.
PDCode random_diagram(std::mt19937_64& rng, int max_crossings, int max_strands = 4);

}  // namespace knotfoam
