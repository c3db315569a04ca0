#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "knotfoam/diagram.hpp"
#include "knotfoam/polyring.hpp"

namespace knotfoam {

// Closed planar trivalent graph stored as a rotation system. Every vertex
// carries two blue half-edges and one red half-edge; red edges are oriented
// from the vertex with red_out set to the other end. Along every blue loop
// the red sources and red targets alternate.
struct HalfEdge {
  int vertex = -1;
  int twin = -1;
  bool red = false;
  bool red_out = false;
};

struct TrivalentGraph {
  std::vector<HalfEdge> half_edges;
  std::vector<std::array<int, 3>> rotation;  // counterclockwise half-edges per vertex
  int blue_circles = 0;                      // blue loops without vertices
  int red_circles = 0;

  std::size_t vertex_count() const { return rotation.size(); }
  int red_edge_count() const;
};

void validate_graph(const TrivalentGraph& g);

// A face is the orbit of h -> next counterclockwise half-edge after twin(h).
struct Face {
  std::vector<int> walk;
};
std::vector<Face> graph_faces(const TrivalentGraph& g);

int blue_loop_count(const TrivalentGraph& g);
LaurentQ graph_evaluation(const TrivalentGraph& g);

enum class FaceKind { CentralBigon, SideBigon, SquareOne, SquareTwo, RedCircle };

// walk lists the face's half-edges starting from the one with the least index.
struct FaceDescriptor {
  FaceKind kind = FaceKind::CentralBigon;
  std::vector<int> walk;
};

const char* face_kind_name(FaceKind k);

std::optional<FaceDescriptor> find_bigon_or_square(const TrivalentGraph& g);

struct ReduceResult {
  TrivalentGraph graph;
  LaurentQ factor;
};

ReduceResult reduce_step(const TrivalentGraph& g, const FaceDescriptor& face);

LaurentQ graded_dimension(const TrivalentGraph& g);

struct CupBasisElement {
  std::vector<int> dots;  // per blue loop, 0 or 1
  int q_degree = 0;
};
std::vector<CupBasisElement> cup_basis(const TrivalentGraph& g);

// Builders.
TrivalentGraph blue_circles_graph(int n);
// Web of a diagram where crossing k is replaced by a red edge when web[k] is
// set and by its oriented smoothing otherwise. The red edge joins the vertex
// of the two incoming strands to the vertex of the two outgoing strands.
TrivalentGraph web_from_diagram(const PDCode& pd, const std::vector<bool>& web);
TrivalentGraph random_graph(std::mt19937_64& rng, int max_vertices = 12);

// JSON: {"vertices":[{"id":..,"rotation":[h,h,h]}],
//        "edges":[{"id":..,"color":"blue"|"red","ends":[h,h]}],
//        "blue_circles":n,"red_circles":n}; red ends run from source to target.
TrivalentGraph graph_from_json(const std::string& text);
std::string graph_to_json(const TrivalentGraph& g);
TrivalentGraph load_graph_file(const std::string& path);

}  // namespace knotfoam
