#include "polyrecon/fixtures.hpp"

namespace polyrecon {

namespace {

Vec vec(std::initializer_list<const char*> values) {
  Vec out;
  for (const char* v : values) out.push_back(parse_rational(v));
  return out;
}

std::vector<std::vector<int>> neighbors_from_matrix(const std::vector<std::vector<int>>& a) {
  std::vector<std::vector<int>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j]) out[i].push_back(static_cast<int>(j));
    }
  }
  return out;
}

Polytope box(int dim) {
  std::vector<Halfspace> hs;
  for (int k = 0; k < dim; ++k) {
    Vec n(static_cast<std::size_t>(dim), Rational(0));
    n[static_cast<std::size_t>(k)] = 1;
    hs.push_back({n, Rational(1)});
    n[static_cast<std::size_t>(k)] = -1;
    hs.push_back({n, Rational(0)});
  }
  return intersect_halfspaces(hs);
}

}  // namespace

Polytope hexahedron8_fixture() {
  std::vector<Vec> v{
      vec({"17/4", "-14/3", "-7/12"}),         vec({"249/121", "-211/121", "1963/121"}),
      vec({"-719/74", "-373/74", "426/37"}),   vec({"-66/43", "-267/43", "-108/43"}),
      vec({"-82/91", "-219/91", "-148/13"}),   vec({"-1588/133", "414/133", "-46/133"}),
      vec({"545/37", "765/37", "-85/37"}),     vec({"69/7", "59/21", "-41/3"}),
  };
  const std::vector<std::vector<int>> adjacency{
      {0, 1, 0, 1, 0, 0, 0, 1}, {1, 0, 1, 0, 0, 0, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 0}, {1, 0, 1, 0, 1, 0, 0, 0},
      {0, 0, 0, 1, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 0, 0, 1, 0, 1}, {1, 0, 0, 0, 1, 0, 1, 0},
  };
  return polytope_from_vertices_and_edges(3, std::move(v), neighbors_from_matrix(adjacency));
}

Polytope unit_square() {
  std::vector<Vec> v{vec({"0", "0"}), vec({"1", "0"}), vec({"1", "1"}), vec({"0", "1"})};
  return polytope_from_vertices_and_edges(2, std::move(v), {{1, 3}, {0, 2}, {1, 3}, {0, 2}});
}

Polytope unit_cube() { return box(3); }

Polytope standard_simplex3() {
  std::vector<Halfspace> hs{
      {vec({"-1", "0", "0"}), Rational(0)},
      {vec({"0", "-1", "0"}), Rational(0)},
      {vec({"0", "0", "-1"}), Rational(0)},
      {vec({"1", "1", "1"}), Rational(1)},
  };
  return intersect_halfspaces(hs);
}

Polytope random_polytope_with_vertices(int dim, int n_facets, std::size_t n_vertices, std::uint64_t seed,
                                       int seed_budget) {
  for (int k = 0; k < seed_budget; ++k) {
    Polytope p = random_simple_polytope(dim, n_facets, seed + static_cast<std::uint64_t>(k));
    if (p.size() == n_vertices) return p;
  }
  throw GeometryError("generation failed: no " + std::to_string(n_vertices) + "-vertex polytope within " +
                      std::to_string(seed_budget) + " seeds");
}

Polytope d3n20_fixture() { return random_polytope_with_vertices(3, 12, 20, 2020); }

Polytope fixture(std::string_view name) {
  if (name == "hex8") return hexahedron8_fixture();
  if (name == "unit-square") return unit_square();
  if (name == "unit-cube") return unit_cube();
  if (name == "simplex3") return standard_simplex3();
  if (name == "d3n20") return d3n20_fixture();
  throw PreconditionError("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() { return {"hex8", "unit-square", "unit-cube", "simplex3", "d3n20"}; }

}  // namespace polyrecon
