#include <doctest.h>

#include <set>

#include "polyrecon/fixtures.hpp"
#include "polyrecon/matching.hpp"
#include "polyrecon/metrics.hpp"

using namespace polyrecon;

namespace {

using Pairs = std::vector<ProjectionPair<Rational>>;

Pairs pairs(std::initializer_list<std::pair<long, long>> xs) {
  Pairs out;
  for (auto [a, b] : xs) out.emplace_back(Rational(a), Rational(b));
  return out;
}

std::set<Vec> as_set(const std::vector<Vec>& vs) { return {vs.begin(), vs.end()}; }

}  // namespace

TEST_SUITE("matching") {
  TEST_CASE("frames are independent small integer vectors") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto f3 = choose_direction_frame(3, seed);
      CHECK(f3.z_others.size() == 2);
      CHECK_NOTHROW(validate_frame(f3));
      for (const auto& x : f3.z_re) CHECK(abs(x) <= 9);
      const auto f2 = choose_direction_frame(2, seed);
      CHECK(f2.z_others.size() == 1);
      CHECK_NOTHROW(validate_frame(f2));
    }
    CHECK(choose_direction_frame(3, 5).z_re == choose_direction_frame(3, 5).z_re);
    CHECK_THROWS_AS(choose_direction_frame(1, 0), PreconditionError);
  }

  TEST_CASE("match one plane of the unit square") {
    PolytopeMomentSource src(unit_square());
    const auto m = match_plane<Rational>(src, Vec{1, 2}, Vec{1, 0}, 4, ScalarMode::exact());
    CHECK(m.pairs == pairs({{0, 0}, {1, 1}, {2, 0}, {3, 1}}));
  }

  TEST_CASE("parallel plane is rejected") {
    PolytopeMomentSource src(unit_square());
    CHECK_THROWS_AS(match_plane<Rational>(src, Vec{1, 2}, Vec{2, 4}, 4, ScalarMode::exact()), PreconditionError);
  }

  TEST_CASE("coincident real projections are a degenerate direction") {
    // (0,1) and (1,0) both project to 1 on z_re = (1,1).
    PolytopeMomentSource src(unit_square());
    CHECK_THROWS_AS(match_plane<Rational>(src, Vec{1, 1}, Vec{1, -2}, 4, ScalarMode::exact()), DegenerateDirection);
  }

  TEST_CASE("plane alignment") {
    const auto a = pairs({{0, 5}, {1, 6}, {3, 7}});
    const auto b = pairs({{0, 1}, {1, 2}, {3, 3}});
    const auto m = align_planes<Rational>({a, b}, ScalarMode::exact());
    CHECK(m.consensus_re == std::vector<Rational>{0, 1, 3});

    const auto c = pairs({{0, 1}, {2, 2}, {3, 3}});
    CHECK_THROWS_WITH_AS(align_planes<Rational>({a, c}, ScalarMode::exact()), doctest::Contains("plane alignment failed"),
                         RecoveryError);
    const auto d = pairs({{0, 1}, {3, 3}});
    CHECK_THROWS_WITH_AS(align_planes<Rational>({a, d}, ScalarMode::exact()), doctest::Contains("inconsistent N"),
                         RecoveryError);
  }

  TEST_CASE("median consensus in float mode") {
    PrecisionGuard guard(40);
    using P = ProjectionPair<Real>;
    auto plane = [](double x0, double x1) {
      return std::vector<P>{{Real(x0), Real(0)}, {Real(x1), Real(0)}};
    };
    const auto m = align_planes<Real>({plane(1.0, 5.0), plane(1.0 + 1e-9, 5.0), plane(1.0 - 1e-9, 5.0 + 2e-9)},
                                      ScalarMode::floating(40));
    CHECK(m.consensus_re[0] == Real(1.0));
    CHECK(m.consensus_re[1] == Real(5.0));
    CHECK_THROWS_AS(align_planes<Real>({plane(1.0, 5.0), plane(1.5, 5.0), plane(1.0, 5.0)}, ScalarMode::floating(40)),
                    RecoveryError);
  }

  TEST_CASE("assemble vertices") {
    DirectionFrame frame{Vec{1, 2}, {Vec{1, 0}}};
    const auto m = align_planes<Rational>({pairs({{0, 0}, {1, 1}, {2, 0}, {3, 1}})}, ScalarMode::exact());
    const auto vs = assemble_vertices<Rational>(m, frame);
    CHECK(as_set(vs) == std::set<Vec>{Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}});

    DirectionFrame identity{Vec{1, 0, 0}, {Vec{0, 1, 0}, Vec{0, 0, 1}}};
    const auto mi = align_planes<Rational>({pairs({{1, 2}, {4, 5}}), pairs({{1, 3}, {4, 6}})}, ScalarMode::exact());
    const auto vi = assemble_vertices<Rational>(mi, identity);
    CHECK(vi == std::vector<Vec>{Vec{1, 2, 3}, Vec{4, 5, 6}});
  }

  TEST_CASE("exact round trips") {
    for (const char* name : {"unit-square", "hex8", "unit-cube", "simplex3"}) {
      CAPTURE(name);
      const Polytope p = fixture(name);
      PolytopeMomentSource src(p);
      // unit-cube has coincident projections for many frames; the retry loop
      // has to get past them.
      const auto r = reconstruct(src, p.dim, p.size(), ScalarMode::exact(), 1);
      CHECK(as_set(r.vertices) == as_set(p.vertices));
      CHECK(r.estimated_N == p.size());
      if (r.attempts.size() == 1) {
        CHECK(r.moments_used == static_cast<std::size_t>(p.dim - 1) * (2 * p.size() - static_cast<std::size_t>(p.dim)));
      }
    }
  }

  TEST_CASE("exact recovery with a slack bound on N") {
    const Polytope p = hexahedron8_fixture();
    PolytopeMomentSource src(p);
    const auto r = reconstruct(src, 3, 11, ScalarMode::exact(), 4, RecoveryMethod::Prony);
    CHECK(as_set(r.vertices) == as_set(p.vertices));
  }

  TEST_CASE("different frames give the same vertex set") {
    const Polytope p = hexahedron8_fixture();
    PolytopeMomentSource src(p);
    const auto a = reconstruct(src, 3, 8, ScalarMode::exact(), 10);
    const auto b = reconstruct(src, 3, 8, ScalarMode::exact(), 77);
    CHECK(as_set(a.vertices) == as_set(b.vertices));
  }

  TEST_CASE("float reconstruction of the eight-vertex fixture") {
    const Polytope p = hexahedron8_fixture();
    PolytopeMomentSource src(p);
    const auto r = reconstruct(src, 3, 8, ScalarMode::floating(64), 1);
    CHECK(vertex_set_distance(p.vertices, r.vertices).value < 1e-6);
  }

  TEST_CASE("float matching of the eight-vertex fixture at 25 bits") {
    PrecisionGuard guard(25);
    const Polytope p = hexahedron8_fixture();
    PolytopeMomentSource src(p);
    const auto m = match_plane<Real>(src, Vec{2, 3, 4}, Vec{-5, 2, -8}, 8, ScalarMode::floating(25));
    REQUIRE(m.pairs.size() == 8);
    const std::vector<double> exact{-54.5604, -31.7442, -26.5238, -15.9248, -7.83333, 11.5, 63.7769, 82.2973};
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(m.pairs[i].first.to_double() - exact[i]) <= 0.05);
  }

  TEST_CASE("two dimensions with a single plane") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Polytope p = random_simple_polytope(2, 7, seed);
      PolytopeMomentSource src(p);
      const auto r = reconstruct(src, 2, p.size(), ScalarMode::exact(), seed);
      CHECK(as_set(r.vertices) == as_set(p.vertices));
    }
  }

  TEST_CASE("an N bound that is too small fails with the full trail") {
    const Polytope p = hexahedron8_fixture();
    PolytopeMomentSource src(p);
    try {
      reconstruct(src, 3, 5, ScalarMode::exact(), 1, RecoveryMethod::Pade, 3);
      FAIL("expected a failure");
    } catch (const ReconstructionFailure& e) {
      CHECK(e.report().attempts.size() == 3);
      for (const auto& a : e.report().attempts) CHECK(a.error.has_value());
    }
  }

  TEST_CASE("recorded moments reproduce the reconstruction") {
    const Polytope p = hexahedron8_fixture();
    const DirectionFrame frame{Vec{2, 3, 4}, {Vec{-5, 2, -8}, Vec{1, -7, 3}}};
    std::vector<MomentSequence> seqs;
    for (std::size_t j = 0; j < 2; ++j) seqs.push_back(moment_provider(p, frame.plane(j), 13, ScalarMode::exact()));
    RecordedMomentSource src(seqs);
    const auto r = reconstruct_with_frame(src, frame, 8, ScalarMode::exact());
    CHECK(as_set(r.vertices) == as_set(p.vertices));
  }
}
