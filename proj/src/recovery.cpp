#include "polyrecon/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyrecon {

std::string to_string(RecoveryMethod method) { return method == RecoveryMethod::Prony ? "prony" : "pade"; }

RecoveryMethod parse_method(std::string_view text) {
  if (text == "prony") return RecoveryMethod::Prony;
  if (text == "pade") return RecoveryMethod::Pade;
  throw PreconditionError("unknown recovery method '" + std::string(text) + "' (expected prony or pade)");
}

namespace {

template <class F>
Real squared_norm(const std::vector<F>& v) {
  Real s(0);
  for (const auto& x : v) {
    if constexpr (is_complex_v<F>) {
      s += norm(x);
    } else {
      s += x * x;
    }
  }
  return s;
}

template <class F>
F scale_pow2(const F& x, long e) {
  if constexpr (is_complex_v<F>) {
    return F(ldexp(x.re, e), ldexp(x.im, e));
  } else {
    return ldexp(x, e);
  }
}

// 2^e near max_v |<v,z>|, estimated from growth of |c_k| beyond the first
// nonzero coefficient.
template <class F>
long scale_exponent(const std::vector<F>& c) {
  std::size_t first = 0;
  while (first < c.size() && is_zero(c[first])) ++first;
  if (first == c.size()) return 0;
  const double base = log2(magnitude(c[first])).to_double();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = first + 1; k < c.size(); ++k) {
    if (is_zero(c[k])) continue;
    const double v = (log2(magnitude(c[k])).to_double() - base) / static_cast<double>(k - first);
    best = std::max(best, v);
  }
  if (!std::isfinite(best)) return 0;
  return std::lround(best);
}

// Numerical rank: singular values above 2 sqrt(m) 2^(-wp) sigma_max, the
// size of the perturbation that rounding every entry at the working
// precision can cause.
template <class F>
RankDiagnostics numerical_rank(const Matrix<F>& h, std::vector<Real>* sigma_out = nullptr) {
  RankDiagnostics diag;
  diag.size = h.rows();
  auto sigma = singular_values(h);
  for (const auto& s : sigma) diag.singular_values.push_back(s.to_double());
  if (sigma.empty() || sigma.front().is_zero()) return diag;
  const Real tau = Real(2) * sqrt(Real(static_cast<long>(h.rows()))) * exp2i(-Real::working_precision()) * sigma.front();
  diag.threshold = tau.to_double();
  for (const auto& s : sigma) {
    if (s > tau) ++diag.rank;
  }
  if (sigma_out) *sigma_out = std::move(sigma);
  return diag;
}

template <class F>
RankDiagnostics hankel_rank_impl(std::span<const F> c, std::vector<Real>* sigma_out) {
  const std::size_t m = (c.size() + 1) / 2;
  const auto h = build_hankel(c, m);
  if constexpr (is_exact_v<F>) {
    RankDiagnostics diag;
    diag.size = m;
    diag.rank = exact_rank(h.entries);
    return diag;
  } else {
    return numerical_rank(h.entries, sigma_out);
  }
}

// `sigma`, when given, holds the singular values of C.
template <class F>
PadeApproximant<F> pade_impl(std::span<const F> c, std::size_t l, std::size_t m, const std::vector<Real>* sigma);

template <class F>
struct ExactPadeTrial {
  std::size_t rank = 0;
  std::optional<PadeApproximant<F>> pade;  // set when the rank is full
};

template <class F>
ExactPadeTrial<F> exact_pade_with_rank(std::span<const F> c, std::size_t m);

}  // namespace

template <class F>
HankelMatrix<F> build_hankel(std::span<const F> c, std::size_t m) {
  if (m == 0) throw PreconditionError("Hankel size must be positive");
  if (c.size() < 2 * m - 1) {
    throw PreconditionError("need 2m-1 coefficients: m=" + std::to_string(m) + " needs " + std::to_string(2 * m - 1) +
                            ", got " + std::to_string(c.size()));
  }
  HankelMatrix<F> h{m, Matrix<F>(m, m)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) h.entries(i, j) = c[i + j];
  }
  return h;
}

template <class F>
KernelResult<F> minimal_kernel_vector(const HankelMatrix<F>& h) {
  const std::size_t m = h.m;
  KernelResult<F> out;
  out.diagnostics.size = m;
  if constexpr (is_exact_v<F>) {
    auto u = clear_denominators(h.entries);
    const auto pivots = bareiss_echelon(u);
    out.diagnostics.rank = pivots.size();
    std::size_t first_dependent = 0;
    while (first_dependent < pivots.size() && pivots[first_dependent] == first_dependent) ++first_dependent;
    const std::size_t M = first_dependent;
    if (M == 0) throw RecoveryError("cannot determine N: Hankel matrix has a zero first column");
    if (M == m) throw RecoveryError("cannot determine N: Hankel matrix of size " + std::to_string(m) + " has full rank");
    if (pivots.size() != M) {
      throw RecoveryError("cannot determine N: first dependent column " + std::to_string(M) + " but rank " +
                          std::to_string(pivots.size()));
    }
    // Row operations preserve the column relation H[:,M] = -H[:,0..M) a.
    for (auto& x : back_substitute(u, M, M)) out.polynomial.coefficients.push_back(-x);
  } else {
    out.diagnostics = numerical_rank(h.entries);
    const std::size_t M = out.diagnostics.rank;
    if (M == 0) throw RecoveryError("cannot determine N: numerical rank is zero");
    if (M == m) {
      throw RecoveryError("cannot determine N: Hankel matrix of size " + std::to_string(m) + " has full numerical rank");
    }
    Matrix<F> a(m, M);
    std::vector<F> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < M; ++j) a(i, j) = h.entries(i, j);
      b[i] = -h.entries(i, M);
    }
    out.polynomial.coefficients = least_squares(a, b);
    std::vector<F> k = out.polynomial.full();
    k.resize(m, F(0));
    const Real res = sqrt(squared_norm(multiply(h.entries, k)));
    const Real scale = Real(out.diagnostics.singular_values.front()) * sqrt(squared_norm(k));
    out.diagnostics.kernel_residual = (res / scale).to_double();
    if (!std::isfinite(out.diagnostics.kernel_residual)) {
      throw RecoveryError("cannot determine N: kernel residual is not finite");
    }
  }
  return out;
}

template <class F>
RankDiagnostics hankel_rank(std::span<const F> c) {
  return hankel_rank_impl(c, nullptr);
}

template <class F>
std::size_t PadeApproximant<F>::denominator_degree() const {
  std::size_t deg = denominator.size();
  while (deg > 0 && is_zero(denominator[deg - 1])) --deg;
  return deg == 0 ? 0 : deg - 1;
}

template <class F>
PadeApproximant<F> pade_denominator(std::span<const F> c, std::size_t l, std::size_t m) {
  return pade_impl(c, l, m, nullptr);
}

namespace {

template <class F>
void fill_pade_system(std::span<const F> c, std::size_t l, std::size_t m, Matrix<F>& cm, std::vector<F>& y) {
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (l + i >= j) cm(i - 1, j - 1) = c[l + i - j];
    }
    y[i - 1] = -c[l + i];
  }
}

// Fraction-free solve of the square system; `rank`, when given, receives the
// rank of the coefficient matrix.
template <class F>
std::optional<std::vector<F>> exact_solve(Matrix<F> a, const std::vector<F>& y, std::size_t* rank) {
  const std::size_t m = a.rows();
  Matrix<F> augmented(m, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) augmented(i, j) = std::move(a(i, j));
    augmented(i, m) = y[i];
  }
  auto u = clear_denominators(augmented);
  const auto pivots = bareiss_echelon(u);
  if (rank) *rank = static_cast<std::size_t>(std::count_if(pivots.begin(), pivots.end(), [m](std::size_t p) { return p < m; }));
  if (pivots.size() >= m && pivots[m - 1] == m - 1) return back_substitute(u, m, m);
  return std::nullopt;
}

template <class F>
void complete_pade(PadeApproximant<F>& out, std::vector<F>& x, std::span<const F> c, std::size_t l);

template <class F>
PadeApproximant<F> pade_impl(std::span<const F> c, std::size_t l, std::size_t m, const std::vector<Real>* cached) {
  if (m == 0) throw PreconditionError("Pade denominator degree must be positive");
  if (c.size() < l + m + 1) {
    throw PreconditionError("Pade (" + std::to_string(l) + "," + std::to_string(m) + ") needs " +
                            std::to_string(l + m + 1) + " coefficients, got " + std::to_string(c.size()));
  }
  Matrix<F> cm(m, m);
  std::vector<F> y(m);
  fill_pade_system(c, l, m, cm, y);
  PadeApproximant<F> out;
  if constexpr (!is_exact_v<F>) {
    const auto sigma = cached ? *cached : singular_values(cm);
    const Real& smax = sigma.front();
    const Real& smin = sigma.back();
    if (smax.is_zero() || smin.is_zero()) throw RecoveryError("Padé system ill-conditioned: matrix is singular");
    const Real cond = smax / smin;
    out.condition = cond.to_double();
    // Rounding of the entries alone can move the solution by about
    // cond * m * 2^-wp relative; past 1 the solve carries no information.
    if (cond * Real(static_cast<long>(m)) * exp2i(-Real::working_precision()) > Real(1)) {
      throw RecoveryError("Padé system ill-conditioned: condition estimate " + cond.to_string(6));
    }
  }
  std::optional<std::vector<F>> x;
  if constexpr (is_exact_v<F>) {
    x = exact_solve(std::move(cm), y, nullptr);
  } else {
    x = solve_full_pivot(std::move(cm), std::move(y));
  }
  if (!x) throw RecoveryError("Padé system ill-conditioned: matrix is singular");
  complete_pade(out, *x, c, l);
  return out;
}

template <class F>
ExactPadeTrial<F> exact_pade_with_rank(std::span<const F> c, std::size_t m) {
  Matrix<F> cm(m, m);
  std::vector<F> y(m);
  fill_pade_system(c, m - 1, m, cm, y);
  ExactPadeTrial<F> out;
  auto x = exact_solve(std::move(cm), y, &out.rank);
  if (x) {
    out.pade.emplace();
    complete_pade(*out.pade, *x, c, m - 1);
  }
  return out;
}

template <class F>
void complete_pade(PadeApproximant<F>& out, std::vector<F>& x, std::span<const F> c, std::size_t l) {
  const std::size_t m = x.size();
  out.denominator.reserve(m + 1);
  out.denominator.emplace_back(1);
  for (auto& b : x) out.denominator.push_back(std::move(b));
  out.numerator.assign(l + 1, F(0));
  for (std::size_t k = 0; k <= l; ++k) {
    for (std::size_t j = 0; j <= std::min(k, m); ++j) out.numerator[k] += out.denominator[j] * c[k - j];
  }
}

}  // namespace

template <class F>
ProjectionSet<F> projections_from_coefficients(std::span<const F> c_in, RecoveryMethod method) {
  std::vector<F> c(c_in.begin(), c_in.end());
  if (c.empty()) throw PreconditionError("no coefficients given");
  ProjectionSet<F> out;
  auto& diag = out.diagnostics;
  diag.method = method;
  if constexpr (!is_exact_v<F>) {
    diag.scale_exponent = scale_exponent(c);
    for (std::size_t k = 0; k < c.size(); ++k) {
      c[k] = scale_pow2(c[k], -diag.scale_exponent * static_cast<long>(k));
    }
  }
  std::vector<F> poly;
  if (method == RecoveryMethod::Prony) {
    const auto kernel = minimal_kernel_vector(build_hankel<F>(c, (c.size() + 1) / 2));
    diag.rank = kernel.diagnostics;
    poly = kernel.polynomial.full();
  } else {
    std::vector<Real> sigma;
    std::optional<PadeApproximant<F>> full;
    if constexpr (is_exact_v<F>) {
      // The full-size Pade matrix is the size-m Hankel matrix with reversed
      // columns: one elimination gives both the rank and, when it is full,
      // the denominator.
      const std::size_t m = (c.size() + 1) / 2;
      if (2 * m <= c.size()) {
        auto trial = exact_pade_with_rank<F>(c, m);
        diag.rank.size = m;
        diag.rank.rank = trial.rank;
        full = std::move(trial.pade);
      } else {
        diag.rank = hankel_rank_impl<F>(c, nullptr);
      }
    } else {
      diag.rank = hankel_rank_impl<F>(c, &sigma);
    }
    const std::size_t n = diag.rank.rank;
    if (n == 0) throw RecoveryError("cannot determine N: Hankel rank is zero");
    if (2 * n > c.size()) {
      throw RecoveryError("cannot determine N: full-rank Hankel of size " + std::to_string(diag.rank.size) +
                          " but only " + std::to_string(c.size()) + " coefficients");
    }
    // With l = n-1 the Pade matrix is the leading n x n Hankel matrix with its
    // columns reversed, so the rank computation already has its spectrum.
    const bool reuse = !is_exact_v<F> && n == diag.rank.size;
    const auto pade = full ? std::move(*full) : pade_impl<F>(c, n - 1, n, reuse ? &sigma : nullptr);
    if constexpr (!is_exact_v<F>) diag.pade_condition = pade.condition;
    diag.pade_degree = pade.denominator_degree();
    diag.zero_projections = n - diag.pade_degree;
    // t^n q(1/t): monic, with the projections as roots.
    poly.assign(pade.denominator.rbegin(), pade.denominator.rend());
  }
  auto roots = find_roots(poly);
  if constexpr (!is_exact_v<F>) {
    std::vector<Complex<Real>> p;
    for (const auto& x : poly) {
      if constexpr (is_complex_v<F>) {
        p.push_back(x);
      } else {
        p.emplace_back(x);
      }
    }
    diag.root_residual = relative_residual(p, roots).to_double();
    for (auto& r : roots) r = scale_pow2(r, diag.scale_exponent);
  }
  out.estimated_N = roots.size();
  out.values = std::move(roots);
  return out;
}

std::size_t count_real(const std::vector<Complex<Real>>& values) {
  return real_values(values).size();
}

std::vector<Real> real_values(const std::vector<Complex<Real>>& values) {
  const Real tol = exp2i(-Real::working_precision() / 2);
  std::vector<Real> out;
  for (const auto& v : values) {
    if (abs(v.im) <= tol * max(Real(1), magnitude(v))) out.push_back(v.re);
  }
  return out;
}

#define POLYRECON_INSTANTIATE(F)                                                                  \
  template HankelMatrix<F> build_hankel<F>(std::span<const F>, std::size_t);                      \
  template KernelResult<F> minimal_kernel_vector<F>(const HankelMatrix<F>&);                      \
  template RankDiagnostics hankel_rank<F>(std::span<const F>);                                    \
  template struct PadeApproximant<F>;                                                             \
  template PadeApproximant<F> pade_denominator<F>(std::span<const F>, std::size_t, std::size_t); \
  template ProjectionSet<F> projections_from_coefficients<F>(std::span<const F>, RecoveryMethod);

POLYRECON_INSTANTIATE(Rational)
POLYRECON_INSTANTIATE(Complex<Rational>)
POLYRECON_INSTANTIATE(Real)
POLYRECON_INSTANTIATE(Complex<Real>)

#undef POLYRECON_INSTANTIATE

}  // namespace polyrecon
