#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polyrecon/geometry.hpp"

namespace polyrecon {

// The 8-vertex polyhedron with vertices
//   (17/4,-14/3,-7/12) (249/121,-211/121,1963/121) (-719/74,-373/74,426/37)
//   (-66/43,-267/43,-108/43) (-82/91,-219/91,-148/13) (-1588/133,414/133,-46/133)
//   (545/37,765/37,-85/37) (69/7,59/21,-41/3)
// and its edge graph; facets are derived from the edges.
Polytope hexahedron8_fixture();
// [0,1]^2, vertices (0,0),(1,0),(1,1),(0,1) in that order.
Polytope unit_square();
// [0,1]^3.
Polytope unit_cube();
// conv(0, e1, e2, e3).
Polytope standard_simplex3();

// First random_simple_polytope(dim, n_facets, s) with exactly n_vertices
// vertices, trying s = seed, seed+1, ...
Polytope random_polytope_with_vertices(int dim, int n_facets, std::size_t n_vertices, std::uint64_t seed,
                                       int seed_budget = 1000);

// d = 3, 12 facets, 20 vertices.
Polytope d3n20_fixture();

// "hex8", "unit-square", "unit-cube", "simplex3", "d3n20".
Polytope fixture(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace polyrecon
