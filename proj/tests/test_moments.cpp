#include <doctest.h>

#include "polyrecon/fixtures.hpp"
#include "polyrecon/moments.hpp"
#include "polyrecon/oracle.hpp"

using namespace polyrecon;

namespace {

Vec v(std::initializer_list<Rational> xs) { return Vec(xs); }

Direction real_z(std::initializer_list<Rational> xs) { return Direction::real(v(xs)); }

int index_of(const Polytope& p, const Vec& x) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.vertices[i] == x) return static_cast<int>(i);
  }
  FAIL("vertex not found");
  return -1;
}

}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("vertex coefficients of the unit square") {
    const Polytope sq = unit_square();
    const auto z = real_z({1, 2});
    CHECK(dv<Rational>(sq, index_of(sq, v({0, 0})), z) == Rational(1, 2));
    CHECK(dv<Rational>(sq, index_of(sq, v({1, 0})), z) == Rational(-1, 2));
    CHECK(dv<Rational>(sq, index_of(sq, v({1, 1})), z) == Rational(1, 2));
    CHECK(dv<Rational>(sq, index_of(sq, v({0, 1})), z) == Rational(-1, 2));
  }

  TEST_CASE("vertex coefficient is invariant under edge scaling") {
    const Polytope p = hexahedron8_fixture();
    const auto z = real_z({2, 3, 4});
    for (int i = 0; i < 8; ++i) {
      auto cone = tangent_cone(p, i);
      const Rational before = dv<Rational>(cone, z);
      for (std::size_t k = 0; k < cone.edges.size(); ++k) {
        auto scaled = cone;
        for (auto& x : scaled.edges[k]) x *= 3;
        scaled.det_abs *= 3;
        CHECK(dv<Rational>(scaled, z) == before);
      }
    }
  }

  TEST_CASE("orthogonal edge makes the direction degenerate") {
    const Polytope sq = unit_square();
    CHECK_THROWS_AS(dv<Rational>(sq, index_of(sq, v({0, 0})), real_z({0, 1})), DegenerateDirection);
  }

  TEST_CASE("axial moments of small polytopes") {
    CHECK(axial_moment<Rational>(unit_square(), 0, real_z({1, 2})) == 1);
    CHECK(axial_moment<Rational>(unit_square(), 1, real_z({1, 3})) == 2);
    CHECK(axial_moment<Rational>(standard_simplex3(), 0, real_z({1, 2, 5})) == Rational(1, 6));
    CHECK(axial_moment<Rational>(unit_cube(), 2, real_z({1, 2, 3})) ==
          MonomialOracle(unit_cube()).integrate_linear_power(2, v({1, 2, 3})));
  }

  TEST_CASE("axial direction along an edge is degenerate for the square") {
    // z = (1,0) is orthogonal to the vertical edges; the moment itself is
    // still defined by integration.
    CHECK_THROWS_AS(axial_moment<Rational>(unit_square(), 1, real_z({1, 0})), DegenerateDirection);
    CHECK(MonomialOracle(unit_square()).integrate_linear_power(1, v({1, 0})) == Rational(1, 2));
  }

  TEST_CASE("zero identities") {
    const auto r = verify_zero_identities<Rational>(unit_square(), real_z({1, 2}));
    REQUIRE(r.size() == 2);
    CHECK(r[0] == 0);
    CHECK(r[1] == 0);
    const auto c = verify_zero_identities<Complex<Rational>>(hexahedron8_fixture(),
                                                             Direction::complex(v({2, 3, 4}), v({-5, 2, -8})));
    for (const auto& x : c) CHECK(is_zero(x));
  }

  TEST_CASE("scaled coefficients") {
    const std::vector<Rational> mu{Rational(1), Rational(1, 2)};
    const auto c = scaled_coefficients<Rational>(mu, 2);
    CHECK(c == std::vector<Rational>{0, 0, 2, 3});
    const std::vector<Rational> mu0{Rational(5, 7)};
    CHECK(scaled_coefficients<Rational>(mu0, 3) == std::vector<Rational>{0, 0, 0, Rational(-30, 7)});
    CHECK(scaled_coefficients<Rational>(std::vector<Rational>{}, 2) == std::vector<Rational>{0, 0});
  }

  TEST_CASE("scaled coefficients are power sums") {
    const Polytope p = hexahedron8_fixture();
    const auto z = real_z({2, 3, 4});
    const auto mu = axial_moments<Rational>(p, z, 10);
    const auto c = scaled_coefficients<Rational>(mu, 3);
    const auto sums = power_sums(vertex_terms<Rational>(p, z), c.size());
    CHECK(c == sums);
  }

  TEST_CASE("generating function reproduces the power sums") {
    // sum_v D_v / (1 - t x_v) = sum_k c_k t^k; compare the series of the
    // rational function built from the vertex data.
    const Polytope sq = unit_square();
    const auto z = real_z({1, 2});
    const auto terms = vertex_terms<Rational>(sq, z);
    const auto c = power_sums(terms, 8);
    std::vector<Rational> series(8, Rational(0));
    for (std::size_t i = 0; i < terms.projections.size(); ++i) {
      Rational pw(1);
      for (auto& s : series) {
        s += terms.weights[i] * pw;
        pw *= terms.projections[i];
      }
    }
    CHECK(series == c);
  }

  TEST_CASE("moment provider") {
    const auto z = real_z({1, 3});
    const auto seq = moment_provider(unit_square(), z, 2, ScalarMode::exact());
    REQUIRE(seq.moments.size() == 2);
    CHECK(seq.moments[0].re == 1);
    CHECK(seq.moments[1].re == 2);

    const auto p = hexahedron8_fixture();
    const auto vol = moment_provider(p, real_z({2, 3, 4}), 1, ScalarMode::exact());
    CHECK(vol.moments[0].re == MonomialOracle(p).volume());
    CHECK(vol.moments[0].re > 0);

    CHECK_THROWS_AS(moment_provider(unit_square(), z, 0, ScalarMode::exact()), PreconditionError);
  }

  TEST_CASE("float moments are trimmed exactly once") {
    const auto p = hexahedron8_fixture();
    const auto z = Direction::complex(v({2, 3, 4}), v({-5, 2, -8}));
    const auto exact = moment_provider(p, z, 6, ScalarMode::exact());
    const auto trimmed = moment_provider(p, z, 6, ScalarMode::floating(25));
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(trimmed.moments[k].re == trim_to_precision(exact.moments[k].re, 25));
      CHECK(trimmed.moments[k].im == trim_to_precision(exact.moments[k].im, 25));
    }
  }

  TEST_CASE("directions are validated") {
    CHECK_THROWS_AS(validate_direction(real_z({0, 0})), PreconditionError);
    CHECK_THROWS_AS(validate_direction(Direction::complex(v({1, 2}), v({2, 4}))), PreconditionError);
    CHECK_NOTHROW(validate_direction(Direction::complex(v({1, 2}), v({1, 0}))));
  }

  TEST_CASE("oracle basics") {
    MonomialOracle sq(unit_square());
    CHECK(sq.integrate(Exponent{0, 0}) == 1);
    CHECK(sq.integrate(Exponent{1, 0}) == Rational(1, 2));
    CHECK(sq.integrate(Exponent{2, 1}) == Rational(1, 6));
    CHECK(integrate_monomial_oracle(standard_simplex3(), Exponent{0, 0, 0}) == Rational(1, 6));
    CHECK(integrate_monomial_oracle(standard_simplex3(), Exponent{1, 1, 1}) == Rational(1, 720));
  }

  TEST_CASE("oracle results are canonical fractions") {
    MonomialOracle p(hexahedron8_fixture());
    for (unsigned j = 0; j < 5; ++j) {
      Rational x = p.integrate_linear_power(j, v({5, -9, -9}));
      Rational y = x;
      y.canonicalize();
      CHECK(x.get_num() == y.get_num());
      CHECK(x.get_den() == y.get_den());
    }
  }

  TEST_CASE("Brion moments agree with the oracle") {
    const Polytope p = hexahedron8_fixture();
    MonomialOracle oracle(p);
    const auto z = real_z({2, 3, 4});
    for (unsigned j = 0; j <= 6; ++j) CHECK(axial_moment<Rational>(p, j, z) == oracle.integrate_linear_power(j, z.z_re));
    const auto zc = Direction::complex(v({2, 3, 4}), v({-5, 2, -8}));
    for (unsigned j = 0; j <= 4; ++j) {
      const auto a = axial_moment<Complex<Rational>>(p, j, zc);
      const auto b = oracle.integrate_complex_power(j, *&zc.z_re, *zc.z_im);
      CHECK(a.re == b.re);
      CHECK(a.im == b.im);
    }
  }

  TEST_CASE("harmonic check") {
    const Vec e1 = v({1, 0, 0});
    const Vec e2 = v({0, 1, 0});
    const auto h = harmonic_check(2, e1, e2);
    CHECK(h.g1 == Polynomial{{{2, 0, 0}, 1}, {{0, 2, 0}, -1}});
    CHECK(h.g2 == Polynomial{{{1, 1, 0}, 2}});
    CHECK(h.harmonic());

    const auto same = harmonic_check(2, e1, e1);
    CHECK(same.g1.empty());
    CHECK(same.g2 == Polynomial{{{2, 0, 0}, 2}});
    CHECK(same.laplacian_g2 == Polynomial{{{0, 0, 0}, 4}});
    CHECK_FALSE(same.harmonic());

    const auto zero = harmonic_check(0, v({1, 2, 3}), v({4, 5, 6}));
    CHECK(zero.g1 == Polynomial{{{0, 0, 0}, 1}});
    CHECK(zero.g2.empty());
    CHECK(zero.harmonic());

    // Orthogonal with equal norm, not axis aligned.
    CHECK(harmonic_check(6, v({1, 2, 2}), v({2, 1, -2})).harmonic());
    CHECK(laplacian(Polynomial{{{3, 0}, 1}}) == Polynomial{{{1, 0}, 6}});
  }
}
