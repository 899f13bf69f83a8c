#pragma once

#include <map>
#include <vector>

#include "polyrecon/geometry.hpp"

namespace polyrecon {

// Sparse multivariate polynomial in x_1..x_d: exponent vector -> coefficient.
// Zero coefficients are never stored, so the zero polynomial is empty.
using Exponent = std::vector<int>;
using Polynomial = std::map<Exponent, Rational>;

Polynomial laplacian(const Polynomial& p);

// Real and imaginary parts g1, g2 of (<x,z_re> + i <x,z_im>)^j.
struct ComplexPowerSplit {
  Polynomial g1;
  Polynomial g2;
};
ComplexPowerSplit split_complex_power(unsigned j, const Vec& z_re, const Vec& z_im);

// Laplacians of g1 and g2 (both empty when z_re, z_im are orthogonal with
// equal norm).
struct HarmonicResidual {
  Polynomial g1;
  Polynomial g2;
  Polynomial laplacian_g1;
  Polynomial laplacian_g2;

  bool harmonic() const { return laplacian_g1.empty() && laplacian_g2.empty(); }
};
HarmonicResidual harmonic_check(unsigned j, const Vec& z_re, const Vec& z_im);

// Exact integration over a polytope by triangulation, independent of the
// vertex-sum formula. The polytope is fanned from its vertex centroid over a
// pulling triangulation of each facet (apex = lexicographically smallest
// vertex), and monomials are integrated over each simplex in barycentric
// coordinates with the Dirichlet formula.
class MonomialOracle {
 public:
  explicit MonomialOracle(const Polytope& polytope);

  Rational integrate(const Exponent& exponents);
  Rational integrate(const Polynomial& p);
  // Integral of <x,z>^j expanded with the multinomial theorem.
  Rational integrate_linear_power(unsigned j, const Vec& z);
  // Integral of (<x,z_re> + i <x,z_im>)^j assembled as int g1 + i int g2.
  Complex<Rational> integrate_complex_power(unsigned j, const Vec& z_re, const Vec& z_im);

  Rational volume() const;
  std::size_t simplex_count() const { return simplices_.size(); }
  const std::vector<std::vector<Vec>>& simplices() const { return simplices_; }

 private:
  int dim_;
  std::vector<std::vector<Vec>> simplices_;
  std::vector<Rational> volumes_;
  std::map<Exponent, Rational> cache_;
};

Rational integrate_monomial_oracle(const Polytope& polytope, const Exponent& exponents);

}  // namespace polyrecon
