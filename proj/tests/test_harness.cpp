#include <doctest.h>

#include <cstdio>
#include <set>
#include <sstream>

#include "polyrecon/experiment.hpp"
#include "polyrecon/fixtures.hpp"
#include "polyrecon/io.hpp"
#include "polyrecon/metrics.hpp"

using namespace polyrecon;

namespace {

std::set<std::vector<int>> rotations_of(std::vector<int> face) {
  std::set<std::vector<int>> out;
  for (std::size_t k = 0; k < face.size(); ++k) {
    out.insert(face);
    std::rotate(face.begin(), face.begin() + 1, face.end());
  }
  return out;
}

// Every face is a cycle in the edge graph and every edge is used by
// exactly two faces, once in each direction.
void check_faces_follow_edges(const OffMesh& mesh, const Polytope& p) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : mesh.faces) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      const int a = f[k];
      const int b = f[(k + 1) % f.size()];
      CHECK(p.adjacent(a, b));
      ++directed[{a, b}];
    }
  }
  for (const auto& [edge, count] : directed) {
    CHECK(count == 1);
    CHECK(directed.count({edge.second, edge.first}) == 1);
  }
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("vertex-set distance") {
    const std::vector<Vec> sq{Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}};
    const std::vector<Vec> shuffled{Vec{1, 1}, Vec{0, 1}, Vec{0, 0}, Vec{1, 0}};
    const auto d0 = vertex_set_distance(sq, shuffled);
    CHECK(d0.is_zero());
    CHECK(d0.value == 0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(shuffled[static_cast<std::size_t>(d0.assignment[i])] == sq[i]);

    const Rational eps(1, 1000);
    std::vector<Vec> moved;
    for (const auto& v : sq) moved.push_back(Vec{v[0] + eps, v[1]});
    const auto d1 = vertex_set_distance(sq, moved);
    CHECK(d1.squared == eps * eps);
    CHECK(d1.value == doctest::Approx(0.001));

    CHECK_THROWS_AS(vertex_set_distance(sq, std::vector<Vec>(sq.begin(), sq.begin() + 3)), PreconditionError);
  }

  TEST_CASE("distance is the bottleneck, not the sum") {
    const std::vector<Vec> a{Vec{0}, Vec{10}};
    const std::vector<Vec> b{Vec{3}, Vec{7}};
    CHECK(vertex_set_distance(a, b).squared == 9);
  }

  TEST_CASE("polytope files round trip") {
    for (const auto& name : fixture_names()) {
      CAPTURE(name);
      const Polytope p = fixture(name);
      const Json j = Json::parse(polytope_to_json(p).dump());
      const Polytope q = polytope_from_json(j);
      CHECK(q.vertices == p.vertices);
      CHECK(q.neighbors == p.neighbors);
    }
    // Facets only.
    Json j = polytope_to_json(unit_cube());
    j.erase("vertices");
    j.erase("adjacency");
    CHECK(polytope_from_json(j).size() == 8);
    CHECK_THROWS_AS(polytope_from_json(Json{{"format", "something-else"}}), PreconditionError);
  }

  TEST_CASE("moment files round trip losslessly") {
    const auto p = hexahedron8_fixture();
    for (const auto& mode : {ScalarMode::exact(), ScalarMode::floating(25)}) {
      for (const auto& z : {Direction::real(Vec{2, 3, 4}), Direction::complex(Vec{2, 3, 4}, Vec{-5, 2, -8})}) {
        const auto seq = moment_provider(p, z, 17, mode);
        const auto back = moments_from_json(Json::parse(moments_to_json(seq).dump()));
        CHECK(back.direction == seq.direction);
        CHECK(back.mode.to_string() == seq.mode.to_string());
        REQUIRE(back.moments.size() == seq.moments.size());
        for (std::size_t k = 0; k < seq.moments.size(); ++k) {
          CHECK(back.moments[k].re == seq.moments[k].re);
          CHECK(back.moments[k].im == seq.moments[k].im);
        }
      }
    }
  }

  TEST_CASE("reports are deterministic apart from the timestamp") {
    const auto p = hexahedron8_fixture();
    auto run = [&] {
      PolytopeMomentSource src(p);
      const auto r = reconstruct(src, 3, 8, ScalarMode::floating(53), 3);
      Json j = report_to_json(r, vertex_set_distance(p.vertices, r.vertices));
      CHECK(j.begin().key() == "generated_at");
      j.erase("generated_at");
      return j.dump(2);
    };
    CHECK(run() == run());
  }

  TEST_CASE("report vertices load back") {
    const auto p = unit_square();
    PolytopeMomentSource src(p);
    const auto r = reconstruct(src, 2, 4, ScalarMode::exact(), 1);
    const auto loaded = report_from_json(Json::parse(report_to_json(r).dump()));
    CHECK(loaded.vertices == r.vertices);
    CHECK(loaded.mode.is_exact());
  }

  TEST_CASE("OFF export of the eight-vertex fixture follows its adjacency") {
    const auto p = hexahedron8_fixture();
    const auto mesh = off_from_polytope(p);
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.faces.size() == 6);
    check_faces_follow_edges(mesh, p);
  }

  TEST_CASE("OFF export of the unit cube") {
    const auto cube = unit_cube();
    const auto mesh = off_from_polytope(cube);
    CHECK(mesh.faces.size() == 6);
    for (const auto& f : mesh.faces) CHECK(f.size() == 4);
    check_faces_follow_edges(mesh, cube);
    std::ostringstream out;
    write_off(out, mesh);
    CHECK(out.str().rfind("OFF\n8 6 0\n", 0) == 0);
  }

  TEST_CASE("hull of a recovered point cloud matches the facet mesh") {
    const auto p = d3n20_fixture();
    const auto from_facets = off_from_polytope(p);
    const auto from_points = off_from_points(p.vertices);
    CHECK(from_points.faces.size() == from_facets.faces.size());
    std::set<std::vector<int>> a;
    for (const auto& f : from_facets.faces) {
      const auto r = rotations_of(f);
      a.insert(*r.begin());
    }
    for (const auto& f : from_points.faces) CHECK(a.count(*rotations_of(f).begin()) == 1);
  }

  TEST_CASE("export is 3D only") {
    CHECK_THROWS_WITH(off_from_polytope(unit_square()), "export is 3D only");
    CHECK_THROWS_AS(off_from_points({Vec{0, 0, 0}, Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{1, 1, 0}}), GeometryError);
  }

  TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK(median({1, kFailedDistance, kFailedDistance}) == kFailedDistance);
    CHECK(median({1, 2, kFailedDistance}) == 2);
  }

  TEST_CASE("facet counts for a target vertex count") {
    CHECK(facets_for_vertices(3, 4) == 4);
    CHECK(facets_for_vertices(3, 20) == 12);
    CHECK(facets_for_vertices(2, 7) == 7);
    CHECK_THROWS_AS(facets_for_vertices(3, 7), PreconditionError);
  }

  TEST_CASE("sweep validation") {
    SweepConfig config;
    config.n_values = {4};
    CHECK_THROWS_AS(validate_sweep(config), PreconditionError);
    config.bits = {20};
    config.trials = 0;
    CHECK_THROWS_AS(validate_sweep(config), PreconditionError);
  }

  TEST_CASE("small sweep records every cell") {
    SweepConfig config;
    config.n_values = {4, 6};
    config.bits = {12, 30, 60};
    config.trials = 3;
    config.jobs = 2;
    const auto result = run_sweep(config);
    CHECK(result.cells.size() == 6);
    for (const auto& cell : result.cells) {
      CHECK(cell.distances.size() == 3);
      for (std::size_t t = 0; t < 3; ++t) CHECK(cell.errors[t].has_value() == !std::isfinite(cell.distances[t]));
    }
    const auto b = result.min_bits(0, 1e-3);
    REQUIRE(b.has_value());
    CHECK(*b <= 30);
    CHECK(result.cell(0, 2).median < 1e-9);
    const Json j = sweep_to_json(result);
    CHECK(j["cells"].size() == 6);
    CHECK(sweep_summary(result).find("N=6") != std::string::npos);

    // Thread count does not change the numbers.
    config.jobs = 1;
    const auto serial = run_sweep(config);
    for (std::size_t i = 0; i < result.cells.size(); ++i) CHECK(serial.cells[i].distances == result.cells[i].distances);
  }

  TEST_CASE("verification suite on fixtures") {
    for (const char* name : {"unit-square", "hex8", "unit-cube"}) {
      CAPTURE(name);
      VerifyOptions options;
      options.directions = 2;
      const auto r = verify_polytope(fixture(name), options);
      CHECK(r.ok());
      CHECK(r.directions_checked == 2);
      CHECK(r.oracle_checks == 14);
    }
  }
}
