#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "knotfoam/diagram.hpp"

namespace knotfoam::testing {

inline std::string data_dir() { return KNOTFOAM_TEST_DATA_DIR; }

inline std::vector<std::string> fixture_files(const std::string& sub) {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() + "/" + sub))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

struct NamedDiagram {
  std::string name;
  PDCode pd;
};

inline PDCode braid(std::vector<int> word, int strands) { return braid_to_pd(word, strands); }

// Diagrams of at most 10 crossings: knots, links and unlinks, including a
// few given directly as PD codes.
inline std::vector<NamedDiagram> test_diagrams() {
  std::vector<NamedDiagram> d = {
      {"unknot", parse_pd("")},
      {"unknot-one-crossing", braid({1}, 2)},
      {"unknot-r2", braid({1, -1}, 2)},
      {"unlink-2", braid({}, 2)},
      {"unlink-3", braid({}, 3)},
      {"trefoil", braid({1, 1, 1}, 2)},
      {"trefoil-mirror", braid({-1, -1, -1}, 2)},
      {"trefoil-pd", parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]")},
      {"figure-eight", braid({1, -2, 1, -2}, 3)},
      {"hopf", braid({1, 1}, 2)},
      {"hopf-mirror", braid({-1, -1}, 2)},
      {"cinquefoil", braid({1, 1, 1, 1, 1}, 2)},
      {"cinquefoil-mirror", braid({-1, -1, -1, -1, -1}, 2)},
      {"three-twist", braid({1, 1, 1, 2, -1, 2}, 3)},
      {"stevedore", braid({1, 1, 2, -1, -3, 2, -3}, 4)},
      {"six-two", braid({1, 1, 1, -2, 1, -2}, 3)},
      {"six-three", braid({1, 1, -2, 1, -2, -2}, 3)},
      {"granny", braid({1, 1, 1, 2, 2, 2}, 3)},
      {"square", braid({1, 1, 1, -2, -2, -2}, 3)},
      {"seven-one", braid({1, 1, 1, 1, 1, 1, 1}, 2)},
      {"torus-3-4", braid({1, 2, 1, 2, 1, 2, 1, 2}, 3)},
      {"eight-twenty", braid({1, 1, 1, -2, -1, -1, -1, -2}, 3)},
      {"eight-twenty-one", braid({1, 1, 1, 2, -1, -1, 2, 2}, 3)},
      {"ten-crossing", braid({1, 1, 1, 2, -1, 2, 1, 1, -2, -2}, 3)},
      {"torus-2-4", braid({1, 1, 1, 1}, 2)},
      {"torus-2-6", braid({1, 1, 1, 1, 1, 1}, 2)},
      {"torus-3-3", braid({1, 2, 1, 2, 1, 2}, 3)},
      {"borromean", braid({1, -2, 1, -2, 1, -2}, 3)},
      {"whitehead-like", braid({1, 1, -2, 1, -2}, 3)},
      {"hopf-plus-circle", braid({1, 1}, 3)},
      {"trefoil-4-strands", braid({1, 1, 1, 2, 3}, 4)},
      {"connected-trefoil-hopf", braid({1, 1, 1, 2, 2}, 3)},
  };
  return d;
}

inline std::vector<NamedDiagram> test_knots() {
  std::vector<NamedDiagram> out;
  for (auto& d : test_diagrams())
    if (components(d.pd).count == 1) out.push_back(std::move(d));
  return out;
}

}  // namespace knotfoam::testing
