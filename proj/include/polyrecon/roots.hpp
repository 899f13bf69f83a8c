#pragma once

#include <type_traits>
#include <vector>

#include "polyrecon/arith.hpp"

namespace polyrecon {

// Polynomials are coefficient vectors in ascending degree: p[k] is the
// coefficient of t^k.

template <class F>
F evaluate(const std::vector<F>& p, const F& t) {
  F acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

// Drops zero leading coefficients; throws on the zero polynomial.
template <class F>
void trim_leading_zeros(std::vector<F>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
  if (p.empty()) throw PreconditionError("zero polynomial");
}

// Roots of a polynomial with rational or Gaussian-rational coefficients whose
// roots are all (Gaussian) rationals, with multiplicity. Zero roots are split
// off exactly. Each remaining root is located by a high-precision Aberth
// iteration and snapped to the lattice the rational root theorem allows
// (a_n * r is a (Gaussian) integer for integral coefficients); candidates
// are confirmed by exact evaluation and divided out. Precision doubles twice
// at most; repeated roots are handled through the squarefree part.
//
// Throws RecoveryError("root finding failed ...") when some root is not
// rational within the precision budget.
std::vector<Complex<Rational>> exact_roots(std::vector<Complex<Rational>> p);

// All complex roots at the current working precision (Aberth-Ehrlich with
// Newton-polygon starting points). Each root satisfies
//   |p(r)| <= 2^(-wp/2) * ||p||_1 * max(1,|r|)^deg,
// otherwise RecoveryError("root finding failed ...") is thrown.
std::vector<Complex<Real>> numeric_roots(std::vector<Complex<Real>> p);

// Ascending by real part, then by imaginary part.
void sort_roots(std::vector<Complex<Rational>>& roots);
void sort_roots(std::vector<Complex<Real>>& roots);

// Largest |p(r)| / (||p||_1 max(1,|r|)^deg) over the given roots.
Real relative_residual(const std::vector<Complex<Real>>& p, const std::vector<Complex<Real>>& roots);

// Root type per coefficient field.
template <class F>
using RootOf = std::conditional_t<is_exact_v<F>, Complex<Rational>, Complex<Real>>;

template <class F>
std::vector<RootOf<F>> find_roots(const std::vector<F>& p) {
  std::vector<RootOf<F>> q;
  q.reserve(p.size());
  for (const auto& c : p) {
    if constexpr (is_complex_v<F>) {
      q.push_back(c);
    } else {
      q.emplace_back(c);
    }
  }
  if constexpr (is_exact_v<F>) {
    return exact_roots(std::move(q));
  } else {
    return numeric_roots(std::move(q));
  }
}

}  // namespace polyrecon
