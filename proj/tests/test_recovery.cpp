#include <doctest.h>

#include <algorithm>

#include "polyrecon/fixtures.hpp"
#include "polyrecon/moments.hpp"
#include "polyrecon/recovery.hpp"

using namespace polyrecon;

namespace {

using CRational = Complex<Rational>;
using CReal = Complex<Real>;

std::vector<Rational> exact_c(const Polytope& p, const Vec& z, std::size_t count) {
  return power_sums(vertex_terms<Rational>(p, Direction::real(z)), count);
}

std::vector<Rational> real_parts(const std::vector<CRational>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) {
    CHECK(x.im == 0);
    out.push_back(x.re);
  }
  return out;
}

std::vector<Rational> rationals(std::initializer_list<Rational> xs) { return std::vector<Rational>(xs); }

std::vector<Rational> sorted_projections(const Polytope& p, const Vec& z) {
  std::vector<Rational> out;
  for (const auto& v : p.vertices) out.push_back(dot(v, z));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("recovery") {
  TEST_CASE("Hankel structure") {
    const auto c = rationals({0, 0, 2, 3});
    const auto h = build_hankel<Rational>(c, 2);
    CHECK(h.entry(0, 0) == 0);
    CHECK(h.entry(0, 1) == 0);
    CHECK(h.entry(1, 0) == 0);
    CHECK(h.entry(1, 1) == 2);

    const auto c5 = rationals({1, 2, 3, 4, 5});
    const auto h3 = build_hankel<Rational>(c5, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK(h3.entry(i, j) == c5[i + j]);
    }
    CHECK_THROWS_WITH_AS(build_hankel<Rational>(rationals({1, 2, 3}), 3), doctest::Contains("need 2m-1 coefficients"),
                         PreconditionError);
  }

  TEST_CASE("kernel vector of the unit square") {
    const auto c = exact_c(unit_square(), Vec{1, 2}, 11);
    const auto k = minimal_kernel_vector(build_hankel<Rational>(c, 6));
    CHECK(k.polynomial.degree() == 4);
    // t (t-1) (t-2) (t-3) = t^4 - 6 t^3 + 11 t^2 - 6 t
    CHECK(k.polynomial.coefficients == rationals({0, -6, 11, -6}));
    CHECK(real_parts(find_roots(k.polynomial.full())) == rationals({0, 1, 2, 3}));

    // Kernel certificate.
    auto kv = k.polynomial.full();
    kv.resize(6, Rational(0));
    const auto h = build_hankel<Rational>(c, 6);
    for (const auto& x : multiply(h.entries, kv)) CHECK(x == 0);
  }

  TEST_CASE("single node") {
    std::vector<Rational> c;
    Rational x(1);
    for (int k = 0; k < 5; ++k, x *= Rational(-7, 3)) c.push_back(Rational(5, 2) * x);
    const auto k = minimal_kernel_vector(build_hankel<Rational>(c, 3));
    CHECK(k.polynomial.degree() == 1);
    CHECK(k.polynomial.coefficients[0] == Rational(7, 3));
  }

  TEST_CASE("zero sequence cannot determine N") {
    const std::vector<Rational> c(7, Rational(0));
    CHECK_THROWS_WITH_AS(minimal_kernel_vector(build_hankel<Rational>(c, 4)), doctest::Contains("cannot determine N"),
                         RecoveryError);
  }

  TEST_CASE("full-rank Hankel cannot determine N") {
    const auto c = exact_c(hexahedron8_fixture(), Vec{2, 3, 4}, 9);
    CHECK_THROWS_AS(minimal_kernel_vector(build_hankel<Rational>(c, 5)), RecoveryError);
  }

  TEST_CASE("Hankel rank detects N with slack") {
    for (const char* name : {"unit-square", "hex8", "d3n20"}) {
      const Polytope p = fixture(name);
      const std::size_t n = p.size();
      const Vec z = p.dim == 2 ? Vec{3, 7} : Vec{2, 3, 4};
      const auto c = exact_c(p, z, 2 * (n + 3) - 1);
      const auto k = minimal_kernel_vector(build_hankel<Rational>(c, n + 3));
      CAPTURE(name);
      CHECK(k.polynomial.degree() == n);
      CHECK(k.diagnostics.rank == n);
    }
  }

  TEST_CASE("float kernel vector reports rank and residual") {
    PrecisionGuard guard(80);
    const auto c = exact_c(unit_square(), Vec{1, 2}, 11);
    std::vector<Real> cf;
    for (const auto& x : c) cf.emplace_back(x);
    const auto k = minimal_kernel_vector(build_hankel<Real>(cf, 6));
    CHECK(k.polynomial.degree() == 4);
    CHECK(k.diagnostics.singular_values.size() == 6);
    CHECK(k.diagnostics.kernel_residual < 1e-15);
  }

  TEST_CASE("Pade of the geometric series") {
    const auto c = rationals({1, 1, 1, 1});
    const auto pa = pade_denominator<Rational>(std::span<const Rational>(c.data(), 2), 0, 1);
    CHECK(pa.denominator == rationals({1, -1}));
    CHECK(pa.numerator == rationals({1}));
  }

  TEST_CASE("Pade of the unit square absorbs the zero projection") {
    const auto c = exact_c(unit_square(), Vec{1, 2}, 8);
    const auto pa = pade_denominator<Rational>(c, 3, 4);
    CHECK(pa.denominator_degree() == 3);
    // q(t) = (1-t)(1-2t)(1-3t)
    CHECK(pa.denominator == rationals({1, -6, 11, -6, 0}));
    // Taylor coefficients of p/q reproduce c_0..c_7.
    std::vector<Rational> series(8, Rational(0));
    for (std::size_t k = 0; k < 8; ++k) {
      Rational s = k < pa.numerator.size() ? pa.numerator[k] : Rational(0);
      for (std::size_t j = 1; j <= std::min<std::size_t>(k, 4); ++j) s -= pa.denominator[j] * series[k - j];
      series[k] = s;
    }
    CHECK(series == c);

    const auto set = projections_from_coefficients<Rational>(c, RecoveryMethod::Pade);
    CHECK(set.estimated_N == 4);
    CHECK(set.diagnostics.pade_degree == 3);
    CHECK(set.diagnostics.zero_projections == 1);
    CHECK(real_parts(set.values) == rationals({0, 1, 2, 3}));
  }

  TEST_CASE("Pade of zeros is ill-conditioned") {
    const std::vector<Rational> c(5, Rational(0));
    CHECK_THROWS_WITH_AS(pade_denominator<Rational>(c, 1, 2), doctest::Contains("Padé system ill-conditioned"),
                         RecoveryError);
    PrecisionGuard guard(53);
    const std::vector<Real> cf(5, Real(0));
    CHECK_THROWS_WITH_AS(pade_denominator<Real>(cf, 1, 2), doctest::Contains("Padé system ill-conditioned"),
                         RecoveryError);
  }

  TEST_CASE("exact roots") {
    CHECK(real_parts(find_roots(rationals({2, -3, 1}))) == rationals({1, 2}));
    CHECK(real_parts(find_roots(rationals({0, -6, 11, -6, 1}))) == rationals({0, 1, 2, 3}));
    CHECK(real_parts(find_roots(rationals({1, -6, 11, -6}))) == rationals({Rational(1, 3), Rational(1, 2), 1}));
    CHECK(real_parts(find_roots(rationals({Rational(-1, 4), 0, 1}))) == rationals({Rational(-1, 2), Rational(1, 2)}));
    // Repeated root.
    CHECK(real_parts(find_roots(rationals({1, -2, 1}))) == rationals({1, 1}));
    {
      // (3t - 1)^6 (t + 2)^3
      std::vector<Rational> p{1};
      auto times = [&](Rational c0, Rational c1) {
        std::vector<Rational> q(p.size() + 1, Rational(0));
        for (std::size_t k = 0; k < p.size(); ++k) {
          q[k] += c0 * p[k];
          q[k + 1] += c1 * p[k];
        }
        p = q;
      };
      for (int k = 0; k < 6; ++k) times(-1, 3);
      for (int k = 0; k < 3; ++k) times(2, 1);
      const auto r = real_parts(find_roots(p));
      REQUIRE(r.size() == 9);
      CHECK(std::count(r.begin(), r.end(), Rational(1, 3)) == 6);
      CHECK(std::count(r.begin(), r.end(), Rational(-2)) == 3);
    }
    // Gaussian rational roots 1/2 +- 3i.
    const auto g = find_roots(std::vector<CRational>{CRational(Rational(37, 4)), CRational(Rational(-1)), CRational(Rational(1))});
    REQUIRE(g.size() == 2);
    CHECK(g[0].re == Rational(1, 2));
    CHECK(g[0].im == -3);
    CHECK(g[1].im == 3);
    CHECK_THROWS_AS(find_roots(rationals({-2, 0, 1})), RecoveryError);
    CHECK_THROWS_AS(find_roots(rationals({0, 0})), PreconditionError);
  }

  TEST_CASE("numeric roots meet the residual contract") {
    PrecisionGuard guard(64);
    // (t-1)(t-2)...(t-8)
    std::vector<Real> p{Real(1)};
    for (int r = 1; r <= 8; ++r) {
      std::vector<Real> next(p.size() + 1, Real(0));
      for (std::size_t k = 0; k < p.size(); ++k) {
        next[k + 1] += p[k];
        next[k] -= p[k] * Real(r);
      }
      p = next;
    }
    const auto roots = find_roots(p);
    REQUIRE(roots.size() == 8);
    for (int r = 1; r <= 8; ++r) CHECK(std::abs(roots[static_cast<std::size_t>(r - 1)].re.to_double() - r) < 1e-9);
    std::vector<CReal> pc;
    for (const auto& x : p) pc.emplace_back(x);
    CHECK(relative_residual(pc, roots) <= exp2i(-32));
  }

  TEST_CASE("projections of the eight-vertex fixture") {
    const Polytope p = hexahedron8_fixture();
    const Vec z{2, 3, 4};
    const auto c = exact_c(p, z, 17);
    const auto expected = sorted_projections(p, z);
    for (auto method : {RecoveryMethod::Prony, RecoveryMethod::Pade}) {
      const auto set = projections_from_coefficients<Rational>(c, method);
      CHECK(set.estimated_N == 8);
      CHECK(real_parts(set.values) == expected);
    }
    const std::vector<double> listed{-54.56, -31.74, -26.52, -15.92, -7.83, 11.50, 63.78, 82.30};
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(expected[i].get_d() - listed[i]) <= 0.01);
  }

  TEST_CASE("real field at 25 bits misses projections") {
    PrecisionGuard guard(25);
    const Polytope p = hexahedron8_fixture();
    const auto seq = moment_provider(p, Direction::real(Vec{2, 3, 4}), 14, ScalarMode::floating(25));
    const auto mu = moments_as<Real>(seq);
    const auto c = scaled_coefficients<Real>(mu, 3);
    std::size_t real_count = 0;
    try {
      const auto set = projections_from_coefficients<Real>(c, RecoveryMethod::Pade);
      real_count = count_real(set.values);
    } catch (const RecoveryError&) {
    }
    CHECK(real_count < 8);
  }

  TEST_CASE("Prony and Pade agree on exact complex data") {
    const Polytope p = d3n20_fixture();
    const auto z = Direction::complex(Vec{2, -3, 5}, Vec{-1, 4, 2});
    const auto c = power_sums(vertex_terms<CRational>(p, z), 41);
    const auto a = projections_from_coefficients<CRational>(c, RecoveryMethod::Prony);
    const auto b = projections_from_coefficients<CRational>(std::span<const CRational>(c.data(), 40), RecoveryMethod::Pade);
    REQUIRE(a.values.size() == 20);
    REQUIRE(b.values.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
      CHECK(a.values[i].re == b.values[i].re);
      CHECK(a.values[i].im == b.values[i].im);
    }
  }

  TEST_CASE("Prony polynomial is the reversed Pade denominator") {
    const Polytope p = hexahedron8_fixture();
    const auto c = exact_c(p, Vec{2, 3, 4}, 17);
    const auto k = minimal_kernel_vector(build_hankel<Rational>(c, 9));
    const auto pa = pade_denominator<Rational>(std::span<const Rational>(c.data(), 16), 7, 8);
    const auto prony = k.polynomial.full();
    REQUIRE(prony.size() == 9);
    for (std::size_t j = 0; j <= 8; ++j) CHECK(prony[8 - j] == pa.denominator[j]);
  }

  TEST_CASE("method names") {
    CHECK(parse_method("pade") == RecoveryMethod::Pade);
    CHECK(parse_method("prony") == RecoveryMethod::Prony);
    CHECK(to_string(RecoveryMethod::Pade) == "pade");
    CHECK_THROWS_AS(parse_method("esprit"), PreconditionError);
  }
}
