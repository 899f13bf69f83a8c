#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyrecon/arith.hpp"

namespace polyrecon {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);

// The constraint <normal, x> <= offset.
struct Halfspace {
  Vec normal;
  Rational offset;
};

// A bounded convex polytope with exact rational vertices.
//
// `vertex_facets[i]` lists the facets tight at vertex i and `neighbors[i]`
// lists the vertices joined to i by an edge; both are sorted ascending.
struct Polytope {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<Halfspace> facets;
  std::vector<std::vector<int>> vertex_facets;
  std::vector<std::vector<int>> neighbors;

  std::size_t size() const { return vertices.size(); }
  bool adjacent(int i, int j) const;
  std::vector<std::vector<bool>> adjacency_matrix() const;
};

// Edge vectors u - v over the neighbors u of apex v, in ascending neighbor order.
struct TangentCone {
  Vec apex;
  std::vector<Vec> edges;
  Rational det_abs;
};

// All vertices of the intersection, found by solving every d-subset of
// constraints; adjacency follows from shared tight facets. Halfspaces that
// touch no vertex are dropped. Throws GeometryError for empty, unbounded, or
// degenerate (non-simple) inputs.
Polytope intersect_halfspaces(std::span<const Halfspace> halfspaces);

// Random simple polytope cut out by `n_facets` integer hyperplanes tangent to
// a sphere around the origin. Deterministic for a given seed.
Polytope random_simple_polytope(int dim, int n_facets, std::uint64_t seed, int retry_budget = 100);

TangentCone tangent_cone(const Polytope& polytope, int vertex_index);

// True iff every vertex has exactly `dim` neighbors with independent edges.
bool check_simple(const Polytope& polytope);

// Rebuilds facets and vertex-facet incidence of a simple polytope known only by
// its vertices and edge graph. Throws GeometryError if the data is not a
// convex simple polytope.
Polytope polytope_from_vertices_and_edges(int dim, std::vector<Vec> vertices,
                                          std::vector<std::vector<int>> neighbors);

// Checks every structural invariant and throws GeometryError naming the first
// violation.
void validate_polytope(const Polytope& polytope);

}  // namespace polyrecon
