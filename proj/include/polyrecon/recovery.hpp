#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrecon/linalg.hpp"
#include "polyrecon/roots.hpp"

namespace polyrecon {

// Everything here is instantiated for Rational, Complex<Rational>, Real and
// Complex<Real>. Floating variants run at the calling thread's working
// precision, which is also the precision the thresholds are derived from.

enum class RecoveryMethod { Prony, Pade };
std::string to_string(RecoveryMethod method);
RecoveryMethod parse_method(std::string_view text);

template <class F>
struct HankelMatrix {
  std::size_t m = 0;
  Matrix<F> entries;

  const F& entry(std::size_t i, std::size_t j) const { return entries(i, j); }
};

// entry(i,j) = c_{i+j}; needs c_0 .. c_{2m-2}.
template <class F>
HankelMatrix<F> build_hankel(std::span<const F> c, std::size_t m);

struct RankDiagnostics {
  std::size_t size = 0;
  std::size_t rank = 0;
  // Floating mode only.
  std::vector<double> singular_values;
  double threshold = 0;
  // |H k| / |H| for the returned kernel vector k (0 when exact).
  double kernel_residual = 0;
};

// Monic t^M + a_{M-1} t^{M-1} + ... + a_0.
template <class F>
struct PronyPolynomial {
  std::vector<F> coefficients;  // a_0 .. a_{M-1}

  std::size_t degree() const { return coefficients.size(); }
  std::vector<F> full() const {
    std::vector<F> p = coefficients;
    p.emplace_back(1);
    return p;
  }
};

template <class F>
struct KernelResult {
  PronyPolynomial<F> polynomial;
  RankDiagnostics diagnostics;
};

// Smallest M with (a_0, .., a_{M-1}, 1, 0, .., 0) in Ker(H). Exact fields use
// the first dependent column of the reduced echelon form; floating fields
// take M as the numerical rank and solve for a by least squares on the first
// M columns. Throws RecoveryError("cannot determine N ...") when no such M < m
// exists or the rank pattern is inconsistent.
template <class F>
KernelResult<F> minimal_kernel_vector(const HankelMatrix<F>& h);

// Rank of the largest Hankel matrix that fits in c (size (|c|+1)/2). For a
// power sum with N nodes this is min(N, size).
template <class F>
RankDiagnostics hankel_rank(std::span<const F> c);

// p(t)/q(t) with q(0) = b_0 = 1.
template <class F>
struct PadeApproximant {
  std::vector<F> numerator;    // a_0 .. a_l
  std::vector<F> denominator;  // b_0 .. b_m
  double condition = 0;        // floating mode condition estimate of C

  // Degree of q after dropping zero leading coefficients.
  std::size_t denominator_degree() const;
};

// Solves C x = y with C_ij = c_{l+i-j} (zero for negative index) and
// y = -(c_{l+1} .. c_{l+m}) for b_1 .. b_m; the numerator is q*c truncated at
// degree l. Needs c_0 .. c_{l+m}.
template <class F>
PadeApproximant<F> pade_denominator(std::span<const F> c, std::size_t l, std::size_t m);

struct RecoveryDiagnostics {
  RecoveryMethod method = RecoveryMethod::Pade;
  RankDiagnostics rank;
  // Pade only.
  std::optional<double> pade_condition;
  std::size_t pade_degree = 0;
  std::size_t zero_projections = 0;
  // Floating mode only.
  double root_residual = 0;
  long scale_exponent = 0;
};

template <class F>
struct ProjectionSet {
  std::vector<RootOf<F>> values;  // sorted ascending by real, then imaginary part
  std::size_t estimated_N = 0;
  RecoveryDiagnostics diagnostics;
};

// Projections <v,z> from scaled coefficients c_k = sum_v <v,z>^k D_v.
//
// Prony: Hankel of size (|c|+1)/2, kernel polynomial, its roots.
// Pade: N from the Hankel rank, then the (N-1, N) approximant; projections
// are the roots of t^N q(1/t), so a vanishing b_N shows up as a zero
// projection (reported as a degree drop of q).
//
// Floating input is first rescaled c_k -> c_k / 2^(e k) with 2^e close to the
// largest projection magnitude, which keeps the Hankel entries comparable;
// roots are scaled back exactly.
template <class F>
ProjectionSet<F> projections_from_coefficients(std::span<const F> c, RecoveryMethod method);

// Roots with |Im r| <= 2^(-wp/2) max(1,|r|), i.e. real up to rounding.
std::size_t count_real(const std::vector<Complex<Real>>& values);
std::vector<Real> real_values(const std::vector<Complex<Real>>& values);

}  // namespace polyrecon
