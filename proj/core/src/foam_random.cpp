#include "knotfoam/errors.hpp"
#include "knotfoam/foam.hpp"

namespace knotfoam {

ClosedFoam random_foam(std::mt19937_64& rng, const RandomFoamOptions& opts) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ClosedFoam f;
    const int total = uniform(1, opts.max_facets);
    const int blue = uniform(0, total);
    for (int i = 0; i < total; ++i) {
      Facet F;
      F.color = i < blue ? Color::Blue : Color::Red;
      F.id = (i < blue ? "B" : "R") + std::to_string(i);
      F.genus = uniform(0, opts.max_genus);
      F.dots = uniform(0, opts.max_decoration);
      if (F.color == Color::Red) F.squares = uniform(0, opts.max_decoration);
      f.facets.push_back(F);
    }
    const int reds = total - blue;
    const int bindings = (blue >= 2 && reds >= 1) ? uniform(1, 6) : 0;
    for (int k = 0; k < bindings; ++k) {
      int a = uniform(0, blue - 1), b = uniform(0, blue - 2);
      if (b >= a) ++b;
      if (uniform(0, 1)) std::swap(a, b);
      int r = blue + uniform(0, reds - 1);
      Binding bd;
      bd.id = "b" + std::to_string(k);
      const std::string tag = std::to_string(k);
      bd.blue_pages = {"s" + tag + "a", "s" + tag + "b"};
      bd.red_page = "s" + tag + "r";
      f.facets[a].slots.push_back(bd.blue_pages[0]);
      f.facets[b].slots.push_back(bd.blue_pages[1]);
      f.facets[r].slots.push_back(bd.red_page);
      f.bindings.push_back(bd);
    }
    try {
      validate_foam(f);
      enumerate_colorings(f);
      return f;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonBipartiteBinding) throw;
    }
  }
  fail(ErrorKind::MalformedFoam, "random foam generator gave up");
}

}  // namespace knotfoam
