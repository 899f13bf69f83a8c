#include "polyrecon/oracle.hpp"

#include <algorithm>
#include <set>

#include "polyrecon/linalg.hpp"

namespace polyrecon {

namespace {

template <class C>
void add_term(std::map<Exponent, C>& poly, const Exponent& e, const C& coef) {
  if (is_zero(coef)) return;
  auto [it, inserted] = poly.emplace(e, coef);
  if (!inserted) {
    it->second += coef;
    if (is_zero(it->second)) poly.erase(it);
  }
}

// poly * sum_m coeffs[m] x_m
template <class C>
std::map<Exponent, C> times_linear(const std::map<Exponent, C>& poly, const std::vector<C>& coeffs) {
  std::map<Exponent, C> out;
  for (const auto& [e, c] : poly) {
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      if (is_zero(coeffs[m])) continue;
      Exponent next = e;
      ++next[m];
      add_term(out, next, C(c * coeffs[m]));
    }
  }
  return out;
}

template <class C>
std::map<Exponent, C> linear_power(const std::vector<C>& coeffs, unsigned j) {
  std::map<Exponent, C> out;
  out.emplace(Exponent(coeffs.size(), 0), C(1));
  for (unsigned k = 0; k < j; ++k) out = times_linear(out, coeffs);
  return out;
}

Integer factorial(long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

std::size_t affine_dimension(const Polytope& p, const std::vector<int>& verts) {
  if (verts.size() <= 1) return 0;
  const auto d = static_cast<std::size_t>(p.dim);
  Matrix<Rational> m(verts.size() - 1, d);
  const Vec& base = p.vertices[static_cast<std::size_t>(verts[0])];
  for (std::size_t r = 1; r < verts.size(); ++r) {
    const Vec& v = p.vertices[static_cast<std::size_t>(verts[r])];
    for (std::size_t c = 0; c < d; ++c) m(r - 1, c) = v[c] - base[c];
  }
  return exact_rank(std::move(m));
}

// Pulling triangulation of the k-dimensional face with the given vertices.
std::vector<std::vector<int>> triangulate_face(const Polytope& p, const std::vector<std::vector<int>>& facet_vertices,
                                               const std::vector<int>& verts, int k) {
  if (k == 0) return {{verts.front()}};
  const int apex = *std::min_element(verts.begin(), verts.end(), [&](int a, int b) {
    return p.vertices[static_cast<std::size_t>(a)] < p.vertices[static_cast<std::size_t>(b)];
  });
  std::set<std::vector<int>> subfaces;
  for (const auto& fv : facet_vertices) {
    std::vector<int> inter;
    std::set_intersection(verts.begin(), verts.end(), fv.begin(), fv.end(), std::back_inserter(inter));
    if (inter.empty() || inter.size() == verts.size()) continue;
    if (static_cast<int>(affine_dimension(p, inter)) != k - 1) continue;
    subfaces.insert(std::move(inter));
  }
  std::vector<std::vector<int>> out;
  for (const auto& sub : subfaces) {
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    for (auto& simplex : triangulate_face(p, facet_vertices, sub, k - 1)) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace

Polynomial laplacian(const Polynomial& p) {
  Polynomial out;
  for (const auto& [e, c] : p) {
    for (std::size_t m = 0; m < e.size(); ++m) {
      if (e[m] < 2) continue;
      Exponent next = e;
      next[m] -= 2;
      add_term(out, next, Rational(c * e[m] * (e[m] - 1)));
    }
  }
  return out;
}

ComplexPowerSplit split_complex_power(unsigned j, const Vec& z_re, const Vec& z_im) {
  if (z_re.size() != z_im.size()) throw PreconditionError("z_re and z_im dimensions differ");
  std::vector<Complex<Rational>> coeffs;
  for (std::size_t m = 0; m < z_re.size(); ++m) coeffs.emplace_back(z_re[m], z_im[m]);
  const auto full = linear_power(coeffs, j);
  ComplexPowerSplit out;
  for (const auto& [e, c] : full) {
    add_term(out.g1, e, c.re);
    add_term(out.g2, e, c.im);
  }
  return out;
}

HarmonicResidual harmonic_check(unsigned j, const Vec& z_re, const Vec& z_im) {
  auto split = split_complex_power(j, z_re, z_im);
  HarmonicResidual out;
  out.laplacian_g1 = laplacian(split.g1);
  out.laplacian_g2 = laplacian(split.g2);
  out.g1 = std::move(split.g1);
  out.g2 = std::move(split.g2);
  return out;
}

MonomialOracle::MonomialOracle(const Polytope& polytope) : dim_(polytope.dim) {
  validate_polytope(polytope);
  if (polytope.facets.empty()) throw GeometryError("triangulation needs facet incidence");
  std::vector<std::vector<int>> facet_vertices(polytope.facets.size());
  for (std::size_t i = 0; i < polytope.size(); ++i) {
    for (int f : polytope.vertex_facets[i]) facet_vertices[static_cast<std::size_t>(f)].push_back(static_cast<int>(i));
  }
  const auto d = static_cast<std::size_t>(dim_);
  Vec centroid(d, Rational(0));
  for (const auto& v : polytope.vertices) {
    for (std::size_t c = 0; c < d; ++c) centroid[c] += v[c];
  }
  for (auto& x : centroid) x /= static_cast<long>(polytope.size());

  const Rational inv_fact(1, factorial(dim_));
  for (const auto& fv : facet_vertices) {
    if (fv.size() < d) throw GeometryError("triangulation failed: facet with too few vertices");
    for (const auto& boundary : triangulate_face(polytope, facet_vertices, fv, dim_ - 1)) {
      std::vector<Vec> simplex{centroid};
      for (int v : boundary) simplex.push_back(polytope.vertices[static_cast<std::size_t>(v)]);
      Matrix<Rational> m(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) m(r, c) = simplex[r + 1][c] - simplex[0][c];
      }
      Rational vol = abs(determinant(std::move(m))) * inv_fact;
      if (sgn(vol) == 0) throw GeometryError("triangulation failed: degenerate simplex");
      simplices_.push_back(std::move(simplex));
      volumes_.push_back(std::move(vol));
    }
  }
}

Rational MonomialOracle::volume() const {
  Rational total(0);
  for (const auto& v : volumes_) total += v;
  return total;
}

Rational MonomialOracle::integrate(const Exponent& exponents) {
  if (static_cast<int>(exponents.size()) != dim_) throw PreconditionError("exponent dimension mismatch");
  if (auto it = cache_.find(exponents); it != cache_.end()) return it->second;
  long degree = 0;
  for (int e : exponents) {
    if (e < 0) throw PreconditionError("negative exponent");
    degree += e;
  }
  const auto d = static_cast<std::size_t>(dim_);
  // int_simplex beta^kappa = d! vol prod(kappa_i!) / (|kappa| + d)!
  Rational scale(factorial(dim_), factorial(degree + dim_));
  scale.canonicalize();
  std::vector<Integer> fact(static_cast<std::size_t>(degree) + 1);
  for (long i = 0; i <= degree; ++i) fact[static_cast<std::size_t>(i)] = factorial(i);

  Rational total(0);
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    const auto& simplex = simplices_[s];
    // x^alpha with x_m = sum_i beta_i s_i[m], expanded in beta.
    std::map<Exponent, Rational> expansion;
    expansion.emplace(Exponent(d + 1, 0), Rational(1));
    for (std::size_t m = 0; m < d; ++m) {
      std::vector<Rational> coeffs(d + 1);
      for (std::size_t i = 0; i <= d; ++i) coeffs[i] = simplex[i][m];
      for (int k = 0; k < exponents[m]; ++k) expansion = times_linear(expansion, coeffs);
    }
    Rational acc(0);
    for (const auto& [kappa, c] : expansion) {
      Integer prod(1);
      for (int k : kappa) prod *= fact[static_cast<std::size_t>(k)];
      acc += c * prod;
    }
    total += acc * volumes_[s];
  }
  total *= scale;
  cache_.emplace(exponents, total);
  return total;
}

Rational MonomialOracle::integrate(const Polynomial& p) {
  Rational total(0);
  for (const auto& [e, c] : p) total += c * integrate(e);
  return total;
}

Rational MonomialOracle::integrate_linear_power(unsigned j, const Vec& z) {
  if (static_cast<int>(z.size()) != dim_) throw PreconditionError("direction dimension mismatch");
  return integrate(linear_power(z, j));
}

Complex<Rational> MonomialOracle::integrate_complex_power(unsigned j, const Vec& z_re, const Vec& z_im) {
  const auto split = split_complex_power(j, z_re, z_im);
  return {integrate(split.g1), integrate(split.g2)};
}

Rational integrate_monomial_oracle(const Polytope& polytope, const Exponent& exponents) {
  MonomialOracle oracle(polytope);
  return oracle.integrate(exponents);
}

}  // namespace polyrecon
