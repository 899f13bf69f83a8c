#include <doctest.h>

#include <algorithm>
#include <set>

#include "polyrecon/fixtures.hpp"
#include "polyrecon/geometry.hpp"

using namespace polyrecon;

namespace {

Halfspace hs(std::initializer_list<long> normal, long offset) {
  Vec n;
  for (long x : normal) n.emplace_back(x);
  return {n, Rational(offset)};
}

std::set<Vec> vertex_set(const Polytope& p) { return {p.vertices.begin(), p.vertices.end()}; }

Vec v(std::initializer_list<Rational> xs) { return Vec(xs); }

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("unit square from four halfspaces") {
    const std::vector<Halfspace> h{hs({-1, 0}, 0), hs({0, -1}, 0), hs({1, 0}, 1), hs({0, 1}, 1)};
    const Polytope p = intersect_halfspaces(h);
    CHECK(p.size() == 4);
    CHECK(vertex_set(p) == std::set<Vec>{v({0, 0}), v({1, 0}), v({1, 1}), v({0, 1})});
    for (std::size_t i = 0; i < 4; ++i) CHECK(p.neighbors[i].size() == 2);
    CHECK(check_simple(p));
    validate_polytope(p);
  }

  TEST_CASE("standard simplex has complete adjacency") {
    const std::vector<Halfspace> h{hs({-1, 0, 0}, 0), hs({0, -1, 0}, 0), hs({0, 0, -1}, 0), hs({1, 1, 1}, 1)};
    const Polytope p = intersect_halfspaces(h);
    CHECK(p.size() == 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) CHECK(p.adjacent(i, j) == (i != j));
    }
  }

  TEST_CASE("empty intersection") {
    const std::vector<Halfspace> h{hs({-1, 0}, 0), hs({0, -1}, 0), hs({1, 1}, 1), hs({-1, -1}, -2)};
    CHECK_THROWS_WITH_AS(intersect_halfspaces(h), "not a bounded polytope", GeometryError);
  }

  TEST_CASE("unbounded intersection") {
    const std::vector<Halfspace> h{hs({-1, 0}, 0), hs({0, -1}, 0), hs({1, -1}, 1)};
    CHECK_THROWS_AS(intersect_halfspaces(h), GeometryError);
  }

  TEST_CASE("square pyramid is rejected as not simple") {
    const std::vector<Halfspace> h{hs({-1, 0, 0}, 0), hs({0, -1, 0}, 0), hs({0, 0, -1}, 0),
                                   hs({2, 0, 1}, 2),  hs({0, 2, 1}, 2)};
    // Apex (0,0,2) lies on four facets.
    CHECK_THROWS_WITH_AS(intersect_halfspaces(h), "not simple", GeometryError);
  }

  TEST_CASE("halfspace order does not matter") {
    std::vector<Halfspace> h{hs({-1, 0, 0}, 0), hs({0, -1, 0}, 0), hs({0, 0, -1}, 0),
                             hs({1, 0, 0}, 1),  hs({0, 1, 0}, 1),  hs({0, 0, 1}, 1)};
    const auto a = vertex_set(intersect_halfspaces(h));
    std::reverse(h.begin(), h.end());
    std::rotate(h.begin(), h.begin() + 2, h.end());
    CHECK(vertex_set(intersect_halfspaces(h)) == a);
  }

  TEST_CASE("random polygon with five facets") {
    const Polytope p = random_simple_polytope(2, 5, 7);
    CHECK(p.size() >= 3);
    CHECK(p.size() <= 5);
    CHECK(check_simple(p));
    validate_polytope(p);
  }

  TEST_CASE("four facets in three dimensions give a simplex") {
    for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
      const Polytope p = random_simple_polytope(3, 4, seed);
      CHECK(p.size() == 4);
    }
  }

  TEST_CASE("too few facets") { CHECK_THROWS_AS(random_simple_polytope(2, 2, 0), PreconditionError); }

  TEST_CASE("generation is deterministic") {
    const Polytope a = random_simple_polytope(3, 9, 1234);
    const Polytope b = random_simple_polytope(3, 9, 1234);
    CHECK(a.vertices == b.vertices);
    CHECK(a.neighbors == b.neighbors);
  }

  TEST_CASE("generated polytopes satisfy the invariants") {
    for (int d : {2, 3, 4}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Polytope p = random_simple_polytope(d, d + 4, seed);
        CAPTURE(d);
        CAPTURE(seed);
        validate_polytope(p);
        CHECK(check_simple(p));
        for (std::size_t i = 0; i < p.size(); ++i) {
          int tight = 0;
          for (const auto& h : p.facets) {
            CHECK(dot(h.normal, p.vertices[i]) <= h.offset);
            if (dot(h.normal, p.vertices[i]) == h.offset) ++tight;
          }
          CHECK(tight == d);
        }
        if (d == 3) {
          std::size_t degrees = 0;
          for (const auto& nb : p.neighbors) degrees += nb.size();
          CHECK(static_cast<long>(p.size()) - static_cast<long>(degrees / 2) + static_cast<long>(p.facets.size()) == 2);
        }
      }
    }
  }

  TEST_CASE("tangent cones") {
    const Polytope sq = unit_square();
    const auto cone = tangent_cone(sq, 0);
    CHECK(cone.apex == v({0, 0}));
    CHECK(std::set<Vec>(cone.edges.begin(), cone.edges.end()) == std::set<Vec>{v({1, 0}), v({0, 1})});
    CHECK(cone.det_abs == 1);

    const Polytope s = standard_simplex3();
    const auto origin = std::find(s.vertices.begin(), s.vertices.end(), v({0, 0, 0})) - s.vertices.begin();
    const auto c3 = tangent_cone(s, static_cast<int>(origin));
    CHECK(std::set<Vec>(c3.edges.begin(), c3.edges.end()) ==
          std::set<Vec>{v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})});
    CHECK(c3.det_abs == 1);
  }

  TEST_CASE("eight-vertex fixture adjacency") {
    const Polytope p = hexahedron8_fixture();
    CHECK(p.size() == 8);
    CHECK(check_simple(p));
    CHECK(p.vertices[0] == v({Rational(17, 4), Rational(-14, 3), Rational(-7, 12)}));
    // Row 1 of the adjacency matrix: v1 joins v2, v4, v8.
    CHECK(p.neighbors[0] == std::vector<int>{1, 3, 7});
    const auto cone = tangent_cone(p, 0);
    CHECK(cone.edges.size() == 3);
    CHECK(cone.edges[0] == p.vertices[1] - p.vertices[0]);
    for (const auto& row : p.adjacency_matrix()) CHECK(std::count(row.begin(), row.end(), true) == 3);
    validate_polytope(p);
  }

  TEST_CASE("unit cube and twenty-vertex fixture") {
    const Polytope cube = unit_cube();
    CHECK(cube.size() == 8);
    CHECK(cube.facets.size() == 6);
    const Polytope p = d3n20_fixture();
    CHECK(p.size() == 20);
    CHECK(p.facets.size() == 12);
    CHECK(check_simple(p));
  }

  TEST_CASE("non-simple data is rejected") {
    // A square pyramid: the apex has four neighbours.
    std::vector<Vec> verts{v({0, 0, 0}), v({1, 0, 0}), v({1, 1, 0}), v({0, 1, 0}), v({Rational(1, 2), Rational(1, 2), 1})};
    std::vector<std::vector<int>> nb{{1, 3, 4}, {0, 2, 4}, {1, 3, 4}, {0, 2, 4}, {0, 1, 2, 3}};
    CHECK_THROWS_AS(polytope_from_vertices_and_edges(3, verts, nb), GeometryError);
  }
}
