#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "polyrecon/arith.hpp"

namespace polyrecon {

// Row-major dense matrix over any of the supported fields.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<F> column(std::size_t j) const {
    std::vector<F> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
std::vector<F> multiply(const Matrix<F>& a, const std::vector<F>& x) {
  std::vector<F> out(a.rows(), F(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  }
  return out;
}

namespace detail {

// Index of the pivot in the trailing block: any nonzero entry for exact fields
// (first in column-major scan order), the entry of largest magnitude otherwise.
template <class F>
std::optional<std::pair<std::size_t, std::size_t>> choose_pivot(const Matrix<F>& a, std::size_t k,
                                                                   std::size_t row_end, std::size_t col_end,
                                                                   bool full) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  const std::size_t last_col = full ? col_end : k + 1;
  if constexpr (is_exact_v<F>) {
    for (std::size_t j = k; j < last_col; ++j) {
      for (std::size_t i = k; i < row_end; ++i) {
        if (!is_zero(a(i, j))) return std::make_pair(i, j);
      }
    }
    return best;
  } else {
    Real best_mag(0);
    for (std::size_t j = k; j < last_col; ++j) {
      for (std::size_t i = k; i < row_end; ++i) {
        Real mag = magnitude(a(i, j));
        if (mag > best_mag) {
          best_mag = std::move(mag);
          best = std::make_pair(i, j);
        }
      }
    }
    return best;
  }
}

}  // namespace detail

// Solves the square system a*x = b by Gaussian elimination with full
// pivoting. Returns nullopt when a is singular (exactly singular for exact
// fields, a zero pivot for floating ones).
template <class F>
std::optional<std::vector<F>> solve_full_pivot(Matrix<F> a, std::vector<F> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw PreconditionError("solve: dimension mismatch");
  std::vector<std::size_t> col_perm(n);
  std::iota(col_perm.begin(), col_perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto pivot = detail::choose_pivot(a, k, n, n, true);
    if (!pivot) return std::nullopt;
    a.swap_rows(k, pivot->first);
    std::swap(b[k], b[pivot->first]);
    a.swap_cols(k, pivot->second);
    std::swap(col_perm[k], col_perm[pivot->second]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      const F factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  std::vector<F> y(n, F(0));
  for (std::size_t ii = n; ii-- > 0;) {
    F s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * y[j];
    y[ii] = s / a(ii, ii);
  }
  std::vector<F> x(n, F(0));
  for (std::size_t k = 0; k < n; ++k) x[col_perm[k]] = y[k];
  return x;
}

template <class F>
F determinant(Matrix<F> a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw PreconditionError("determinant: matrix not square");
  F det(1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto pivot = detail::choose_pivot(a, k, n, n, false);
    if (!pivot) return F(0);
    if (pivot->first != k) {
      a.swap_rows(k, pivot->first);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      const F factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return det;
}

// Reduced row echelon form over an exact field. Returns the pivot columns in
// increasing order; `a` is overwritten with its RREF.
template <class F>
std::vector<std::size_t> row_reduce(Matrix<F>& a) {
  static_assert(is_exact_v<F>, "row_reduce is exact-only");
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && is_zero(a(p, col))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(row, p);
    const F inv = F(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      const F factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination for exact fields. Entries are first scaled to
// integers (Gaussian integers for complex data), which keeps intermediate
// sizes bounded by the minors of the input.

template <class F>
struct IntegralOf;
template <>
struct IntegralOf<Rational> {
  using type = Integer;
};
template <>
struct IntegralOf<Complex<Rational>> {
  using type = Complex<Integer>;
};

inline Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Complex<Integer> exact_quotient(const Complex<Integer>& a, const Complex<Integer>& b) {
  const Integer n = b.re * b.re + b.im * b.im;
  return {exact_quotient(Integer(a.re * b.re + a.im * b.im), n), exact_quotient(Integer(a.im * b.re - a.re * b.im), n)};
}

inline Rational to_field(const Integer& x) { return Rational(x); }
inline Complex<Rational> to_field(const Complex<Integer>& x) { return {Rational(x.re), Rational(x.im)}; }

// The matrix times the lcm of all its denominators.
template <class F>
Matrix<typename IntegralOf<F>::type> clear_denominators(const Matrix<F>& a) {
  Integer l(1);
  auto absorb = [&l](const Rational& x) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t()); };
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if constexpr (is_complex_v<F>) {
        absorb(a(i, j).re);
        absorb(a(i, j).im);
      } else {
        absorb(a(i, j));
      }
    }
  }
  Matrix<typename IntegralOf<F>::type> out(a.rows(), a.cols());
  auto scale = [&l](const Rational& x) { return Integer(x.get_num() * (l / x.get_den())); };
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if constexpr (is_complex_v<F>) {
        out(i, j) = Complex<Integer>(scale(a(i, j).re), scale(a(i, j).im));
      } else {
        out(i, j) = scale(a(i, j));
      }
    }
  }
  return out;
}

// Bareiss elimination to row echelon form; every division is exact. Returns
// the pivot columns in increasing order (the same as for the reduced form).
namespace detail {

// Exact division by a fixed divisor, with per-divisor work done once.
struct IntegerDivisor {
  Integer d;
  explicit IntegerDivisor(const Integer& x) : d(x) {}
  Integer divide(const Integer& a) const { return exact_quotient(a, d); }
};

struct GaussianDivisor {
  Complex<Integer> conj_d;
  Integer norm_d;
  explicit GaussianDivisor(const Complex<Integer>& x) : conj_d(x.re, -x.im), norm_d(x.re * x.re + x.im * x.im) {}
  Complex<Integer> divide(const Complex<Integer>& a) const {
    const Complex<Integer> p = a * conj_d;
    return {exact_quotient(p.re, norm_d), exact_quotient(p.im, norm_d)};
  }
};

inline IntegerDivisor divisor_for(const Integer& x) { return IntegerDivisor(x); }
inline GaussianDivisor divisor_for(const Complex<Integer>& x) { return GaussianDivisor(x); }

}  // namespace detail

template <class E>
std::vector<std::size_t> bareiss_echelon(Matrix<E>& a) {
  std::vector<std::size_t> pivots;
  auto prev = detail::divisor_for(E(1));
  std::size_t r = 0;
  for (std::size_t k = 0; k < a.cols() && r < a.rows(); ++k) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, k))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = k + 1; j < a.cols(); ++j) {
        a(i, j) = prev.divide(E(a(r, k) * a(i, j) - a(i, k) * a(r, j)));
      }
      a(i, k) = E(0);
    }
    prev = detail::divisor_for(a(r, k));
    pivots.push_back(k);
    ++r;
  }
  return pivots;
}

// Solves the leading n x n upper triangular block of an echelon form against
// column rhs_col, in the fraction field.
template <class E>
auto back_substitute(const Matrix<E>& u, std::size_t n, std::size_t rhs_col) {
  using F = decltype(to_field(std::declval<E>()));
  std::vector<F> x(n);
  for (std::size_t i = n; i-- > 0;) {
    F s = to_field(u(i, rhs_col));
    for (std::size_t j = i + 1; j < n; ++j) s -= to_field(u(i, j)) * x[j];
    x[i] = s / to_field(u(i, i));
  }
  return x;
}

template <class F>
std::size_t exact_rank(const Matrix<F>& a) {
  auto integral = clear_denominators(a);
  return bareiss_echelon(integral).size();
}

namespace detail {

// Singular values (descending) by one-sided Jacobi rotations.
template <class F>
std::vector<Real> jacobi_singular_values(Matrix<F> a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const Real tol = exp2i(-Real::working_precision()) * Real(static_cast<long>(std::max(m, n)));
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Real alpha(0), beta(0);
        F gamma(0);
        for (std::size_t i = 0; i < m; ++i) {
          if constexpr (is_complex_v<F>) {
            alpha += norm(a(i, p));
            beta += norm(a(i, q));
            gamma += conj(a(i, p)) * a(i, q);
          } else {
            alpha += a(i, p) * a(i, p);
            beta += a(i, q) * a(i, q);
            gamma += a(i, p) * a(i, q);
          }
        }
        const Real g = magnitude(gamma);
        if (g.is_zero() || g <= tol * sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate the phase of column q so that the inner product is real.
        F phase = F(1);
        if constexpr (is_complex_v<F>) {
          phase = conj(gamma) / F(g);
        } else {
          if (gamma.sign() < 0) phase = F(-1);
        }
        const Real zeta = (beta - alpha) / (Real(2) * g);
        Real t = Real(1) / (abs(zeta) + sqrt(Real(1) + zeta * zeta));
        if (zeta.sign() < 0) t = -t;
        const Real c = Real(1) / sqrt(Real(1) + t * t);
        const Real s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const F ap = a(i, p);
          const F bq = a(i, q) * phase;
          a(i, p) = ap * F(c) - bq * F(s);
          a(i, q) = ap * F(s) + bq * F(c);
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<Real> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Real s(0);
    for (std::size_t i = 0; i < m; ++i) {
      if constexpr (is_complex_v<F>) {
        s += norm(a(i, j));
      } else {
        s += a(i, j) * a(i, j);
      }
    }
    out.push_back(sqrt(s));
  }
  std::sort(out.begin(), out.end(), [](const Real& x, const Real& y) { return x > y; });
  return out;
}

template <class F>
Real column_norm_squared(const Matrix<F>& a, std::size_t col, std::size_t from) {
  Real s(0);
  for (std::size_t i = from; i < a.rows(); ++i) {
    if constexpr (is_complex_v<F>) {
      s += norm(a(i, col));
    } else {
      s += a(i, col) * a(i, col);
    }
  }
  return s;
}

template <class F>
F conjugate(const F& x) {
  if constexpr (is_complex_v<F>) {
    return conj(x);
  } else {
    return x;
  }
}

// -x/|x| (or -1 for x = 0): the Householder phase that avoids cancellation.
template <class F>
F negative_phase(const F& x) {
  const Real mag = magnitude(x);
  if (mag.is_zero()) return F(-1);
  if constexpr (is_complex_v<F>) {
    return F(-x.re / mag, -x.im / mag);
  } else {
    return x.sign() < 0 ? F(1) : F(-1);
  }
}

// Householder reduction of a (rows >= cols) to upper bidiagonal form. Only
// the magnitudes of the bidiagonal entries are returned: diagonal unitary
// scalings make the matrix real without changing its singular values.
template <class F>
std::pair<std::vector<Real>, std::vector<Real>> bidiagonal_magnitudes(Matrix<F> a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<Real> d(n, Real(0));
  std::vector<Real> e(n > 0 ? n - 1 : 0, Real(0));
  for (std::size_t k = 0; k < n; ++k) {
    // Left reflection zeroing a(k+1:m, k).
    {
      const Real len = sqrt(column_norm_squared(a, k, k));
      if (!len.is_zero()) {
        const F alpha = negative_phase(a(k, k)) * F(len);
        std::vector<F> v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = a(i, k);
        v[0] -= alpha;
        Real vv(0);
        for (const auto& x : v) {
          if constexpr (is_complex_v<F>) {
            vv += norm(x);
          } else {
            vv += x * x;
          }
        }
        if (!vv.is_zero()) {
          const F scale = F(Real(2) / vv);
          for (std::size_t j = k + 1; j < n; ++j) {
            F s(0);
            for (std::size_t i = k; i < m; ++i) s += conjugate(v[i - k]) * a(i, j);
            s *= scale;
            for (std::size_t i = k; i < m; ++i) a(i, j) -= v[i - k] * s;
          }
        }
        d[k] = len;
      }
    }
    if (k + 1 >= n) continue;
    // Right reflection zeroing a(k, k+2:n).
    Real row(0);
    for (std::size_t j = k + 1; j < n; ++j) {
      if constexpr (is_complex_v<F>) {
        row += norm(a(k, j));
      } else {
        row += a(k, j) * a(k, j);
      }
    }
    const Real len = sqrt(row);
    if (len.is_zero()) continue;
    std::vector<F> w(n - k - 1);
    for (std::size_t j = k + 1; j < n; ++j) w[j - k - 1] = conjugate(a(k, j));
    const F gamma = negative_phase(w[0]) * F(len);
    w[0] -= gamma;
    Real ww(0);
    for (const auto& x : w) {
      if constexpr (is_complex_v<F>) {
        ww += norm(x);
      } else {
        ww += x * x;
      }
    }
    if (!ww.is_zero()) {
      const F scale = F(Real(2) / ww);
      for (std::size_t i = k + 1; i < m; ++i) {
        F s(0);
        for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * w[j - k - 1];
        s *= scale;
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * conjugate(w[j - k - 1]);
      }
    }
    e[k] = len;
  }
  return {std::move(d), std::move(e)};
}

}  // namespace detail

// Singular values (descending) at the current working precision: Householder
// bidiagonalization, then one-sided Jacobi on the real bidiagonal.
template <class F>
std::vector<Real> singular_values(const Matrix<F>& a) {
  static_assert(!is_exact_v<F>, "singular_values is floating-only");
  if (a.rows() < a.cols()) {
    Matrix<F> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return singular_values(t);
  }
  const auto [d, e] = detail::bidiagonal_magnitudes(a);
  const std::size_t n = d.size();
  Matrix<Real> b(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    b(k, k) = d[k];
    if (k + 1 < n) b(k, k + 1) = e[k];
  }
  return detail::jacobi_singular_values(std::move(b));
}

// Least-squares solution of a*x ~ b (a has full column rank) by modified
// Gram-Schmidt QR with one reorthogonalization pass.
template <class F>
std::vector<F> least_squares(const Matrix<F>& a, const std::vector<F>& b) {
  static_assert(!is_exact_v<F>, "least_squares is floating-only");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || n > m) throw PreconditionError("least_squares: dimension mismatch");
  auto dot = [](const std::vector<F>& u, const std::vector<F>& v) {
    F s(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if constexpr (is_complex_v<F>) {
        s += conj(u[i]) * v[i];
      } else {
        s += u[i] * v[i];
      }
    }
    return s;
  };
  std::vector<std::vector<F>> q;
  Matrix<F> r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<F> v = a.column(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const F proj = dot(q[k], v);
        r(k, j) += proj;
        for (std::size_t i = 0; i < m; ++i) v[i] -= proj * q[k][i];
      }
    }
    Real len(0);
    for (const F& x : v) {
      if constexpr (is_complex_v<F>) {
        len += norm(x);
      } else {
        len += x * x;
      }
    }
    len = sqrt(len);
    if (len.is_zero()) throw RecoveryError("least_squares: rank-deficient system");
    r(j, j) = F(len);
    for (F& x : v) x /= F(len);
    q.push_back(std::move(v));
  }
  std::vector<F> qb(n, F(0));
  for (std::size_t j = 0; j < n; ++j) qb[j] = dot(q[j], b);
  std::vector<F> x(n, F(0));
  for (std::size_t ii = n; ii-- > 0;) {
    F s = qb[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
    x[ii] = s / r(ii, ii);
  }
  return x;
}

}  // namespace polyrecon
