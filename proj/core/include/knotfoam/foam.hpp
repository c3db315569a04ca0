#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "knotfoam/polyring.hpp"

namespace knotfoam {

enum class Color { Blue, Red };

const char* color_name(Color c);

struct Facet {
  std::string id;
  Color color = Color::Blue;
  int genus = 0;
  int dots = 0;
  int squares = 0;
  std::vector<std::string> slots;

  int euler() const { return 2 - 2 * genus - static_cast<int>(slots.size()); }
};

// A binding circle, or in an open foam possibly a binding arc whose two ends
// are boundary vertices. blue_pages is ordered; the order feeds n_{1>2}.
struct Binding {
  std::string id;
  std::array<std::string, 2> blue_pages;
  std::string red_page;
  std::vector<std::string> ends;

  bool is_arc() const { return !ends.empty(); }
};

// A free boundary piece of an open foam: either a whole boundary circle of a
// facet (ends empty) or an arc of a facet boundary between two boundary
// vertices. edge names the piece of the boundary graph it lies on.
struct FreeEdge {
  std::string slot;
  Color color = Color::Blue;
  std::string edge;
  std::vector<std::string> ends;

  bool is_arc() const { return !ends.empty(); }
};

struct ClosedFoam {
  std::vector<Facet> facets;
  std::vector<Binding> bindings;
};

struct OpenFoam {
  std::vector<Facet> facets;
  std::vector<Binding> bindings;
  std::vector<FreeEdge> free_boundary;
};

OpenFoam to_open(const ClosedFoam& f);
// Throws MalformedFoam if f has free boundary.
ClosedFoam to_closed(const OpenFoam& f);

struct Coloring {
  std::map<std::string, int> assignment;  // blue facet id -> 1 or 2
};

enum class Subsurface { Sigma1, SigmaB };

void validate_foam(const ClosedFoam& f);
void validate_foam(const OpenFoam& f);

// Components of the blue subsurface, each listed in facet order.
std::vector<std::vector<std::string>> blue_components(const ClosedFoam& f);
std::vector<Coloring> enumerate_colorings(const ClosedFoam& f);
long chi_subsurface(const ClosedFoam& f, const Coloring& c, Subsurface which);
int count_n12(const ClosedFoam& f, const Coloring& c);
IntPoly2 evaluate_foam(const ClosedFoam& f);

// Boundary signature: sorted (edge, color, sorted ends) triples.
std::vector<std::string> boundary_signature(const OpenFoam& f);

// Glues two open foams with identical boundary signatures into a closed foam.
// Facet and binding ids are prefixed with "a:" and "b:".
ClosedFoam glue(const OpenFoam& piece, const OpenFoam& context);

// Closes every free boundary circle with a disk; caps maps free edge id to the
// number of dots on that disk (red caps must carry 0). Missing entries mean 0.
ClosedFoam cap_closure(const OpenFoam& f, const std::map<std::string, int>& caps);

struct FoamTerm {
  IntPoly2 coeff = 1;
  OpenFoam foam;
};

struct FoamCombination {
  std::vector<FoamTerm> terms;
};

struct Relation {
  std::string name;
  std::string description;
  FoamCombination lhs;
  FoamCombination rhs;
  std::vector<OpenFoam> contexts;
};

struct RelationWitness {
  std::string closure;
  IntPoly2 lhs_value;
  IntPoly2 rhs_value;
};

struct RelationCheck {
  bool pass = true;
  std::size_t closures = 0;
  std::optional<RelationWitness> witness;
};

// Compares both sides on every closure: disk caps with 0..max_dots dots when
// the boundary is a union of circles, then every term of either side used as
// a closing context with 0..max_dots extra dots on each of its blue facets,
// then the extra contexts.
RelationCheck verify_local_relation(const FoamCombination& lhs, const FoamCombination& rhs, int max_dots,
                                    const std::vector<OpenFoam>& extra_contexts = {});

std::vector<Relation> relation_fixtures();
std::vector<Relation> load_relations(const std::string& directory);
std::string default_relations_dir();

// JSON text round trip in the documented schema.
OpenFoam foam_from_json(const std::string& text);
std::string foam_to_json(const OpenFoam& f);
OpenFoam load_foam_file(const std::string& path);
Relation relation_from_json(const std::string& text);

struct RandomFoamOptions {
  int max_facets = 8;
  int max_decoration = 3;
  int max_genus = 1;
};

// A valid closed foam whose binding graph is 2-colorable.
ClosedFoam random_foam(std::mt19937_64& rng, const RandomFoamOptions& opts = {});

}  // namespace knotfoam
