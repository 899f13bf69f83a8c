#include "polyrecon/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyrecon {

namespace {

using CReal = Complex<Real>;
using CRational = Complex<Rational>;

Real abs_sum(const std::vector<CReal>& p) {
  Real s(0);
  for (const auto& c : p) s += magnitude(c);
  return s;
}

// p(z), p'(z) and sum_k |a_k| |z|^k in one Horner pass.
struct Evaluation {
  CReal value;
  CReal derivative;
  Real bound;
};

Evaluation evaluate_with_derivative(const std::vector<CReal>& p, const CReal& z) {
  const Real az = magnitude(z);
  Evaluation e{CReal(Real(0)), CReal(Real(0)), Real(0)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    e.derivative = e.derivative * z + e.value;
    e.value = e.value * z + *it;
    e.bound = e.bound * az + magnitude(*it);
  }
  return e;
}

// Starting points on circles whose radii come from the upper convex hull of
// (k, log2 |a_k|).
std::vector<CReal> initial_estimates(const std::vector<CReal>& p) {
  const int n = static_cast<int>(p.size()) - 1;
  std::vector<int> idx;
  std::vector<double> lg;
  for (int k = 0; k <= n; ++k) {
    if (is_zero(p[static_cast<std::size_t>(k)])) continue;
    idx.push_back(k);
    lg.push_back(log2(magnitude(p[static_cast<std::size_t>(k)])).to_double());
  }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (idx[b] - idx[a]) * (lg[i] - lg[a]) - (lg[b] - lg[a]) * (idx[i] - idx[a]);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<CReal> z;
  z.reserve(static_cast<std::size_t>(n));
  constexpr double sigma = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int i = idx[hull[h]];
    const int j = idx[hull[h + 1]];
    const int count = j - i;
    const double e = (lg[hull[h]] - lg[hull[h + 1]]) / count;
    const double ei = std::floor(e);
    const double scale = std::exp2(e - ei);
    for (int m = 0; m < count; ++m) {
      const double theta = 2 * std::numbers::pi * m / count + 2 * std::numbers::pi * i / n + sigma;
      z.emplace_back(ldexp(Real(scale * std::cos(theta)), static_cast<long>(ei)),
                     ldexp(Real(scale * std::sin(theta)), static_cast<long>(ei)));
    }
  }
  return z;
}

// Aberth-Ehrlich iteration in place. A root stops moving once its residual
// is at rounding level. Returns true when every root got there.
bool aberth(const std::vector<CReal>& p, std::vector<CReal>& z, int max_iterations) {
  const std::size_t n = z.size();
  const Real eps = exp2i(-Real::working_precision()) * Real(static_cast<long>(4 * (n + 1)));
  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  for (int iter = 0; iter < max_iterations && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Evaluation e = evaluate_with_derivative(p, z[i]);
      if (magnitude(e.value) <= eps * e.bound) {
        done[i] = true;
        --remaining;
        continue;
      }
      if (is_zero(e.derivative)) {
        // Nudge off a critical point.
        z[i] += CReal(ldexp(Real(1) + magnitude(z[i]), -8), ldexp(Real(1) + magnitude(z[i]), -9));
        continue;
      }
      const CReal newton = e.value / e.derivative;
      CReal repulsion(Real(0));
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const CReal diff = z[i] - z[j];
        if (!is_zero(diff)) repulsion += CReal(Real(1)) / diff;
      }
      const CReal denom = CReal(Real(1)) - newton * repulsion;
      z[i] -= is_zero(denom) ? newton : newton / denom;
    }
  }
  return remaining == 0;
}

Integer round_to_integer(const Real& x) {
  const Rational q = x.to_rational();
  Integer out;
  const Integer num = 2 * q.get_num() + q.get_den();
  const Integer den = 2 * q.get_den();
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

// Synthetic division by (t - r); the remainder is assumed to be zero.
std::vector<CRational> deflate(const std::vector<CRational>& p, const CRational& r) {
  std::vector<CRational> q(p.size() - 1);
  CRational carry(Rational(0));
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    carry = carry * r + p[k + 1];
    q[k] = carry;
  }
  return q;
}

// Multiplies p by the lcm of all denominators, giving Gaussian-integer
// coefficients.
std::vector<CRational> clear_denominators(const std::vector<CRational>& p) {
  Integer l(1);
  for (const auto& c : p) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re.get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im.get_den_mpz_t());
  }
  std::vector<CRational> out;
  out.reserve(p.size());
  const Rational f(l);
  for (const auto& c : p) out.emplace_back(Rational(c.re * f), Rational(c.im * f));
  return out;
}

std::size_t max_bits(const std::vector<CRational>& p) {
  std::size_t bits = 1;
  for (const auto& c : p) {
    for (const Rational* x : {&c.re, &c.im}) {
      bits = std::max(bits, mpz_sizeinbase(x->get_num_mpz_t(), 2) + mpz_sizeinbase(x->get_den_mpz_t(), 2));
    }
  }
  return bits;
}

template <class T>
bool root_less(const Complex<T>& a, const Complex<T>& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

}  // namespace

void sort_roots(std::vector<CRational>& roots) { std::sort(roots.begin(), roots.end(), root_less<Rational>); }
void sort_roots(std::vector<CReal>& roots) { std::sort(roots.begin(), roots.end(), root_less<Real>); }

Real relative_residual(const std::vector<CReal>& p, const std::vector<CReal>& roots) {
  const Real norm1 = abs_sum(p);
  const long deg = static_cast<long>(p.size()) - 1;
  Real worst(0);
  for (const auto& r : roots) {
    const Real base = max(Real(1), magnitude(r));
    Real scale = norm1;
    for (long k = 0; k < deg; ++k) scale *= base;
    worst = max(worst, magnitude(evaluate(p, r)) / scale);
  }
  return worst;
}

std::vector<CReal> numeric_roots(std::vector<CReal> p) {
  trim_leading_zeros(p);
  std::vector<CReal> roots;
  std::size_t zeros = 0;
  while (zeros < p.size() && is_zero(p[zeros])) ++zeros;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(Real(0));
  if (p.size() > 1) {
    std::vector<CReal> z = initial_estimates(p);
    const int budget = 200 + 20 * static_cast<int>(p.size());
    aberth(p, z, budget);
    const Real tolerance = exp2i(-Real::working_precision() / 2);
    const Real residual = relative_residual(p, z);
    if (!residual.is_finite() || residual > tolerance) {
      throw RecoveryError("root finding failed: relative residual " + residual.to_string(6) + " exceeds " +
                          tolerance.to_string(6) + " for degree " + std::to_string(p.size() - 1));
    }
    roots.insert(roots.end(), z.begin(), z.end());
  }
  sort_roots(roots);
  return roots;
}

namespace {

std::vector<CRational> derivative(const std::vector<CRational>& p) {
  std::vector<CRational> out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * CRational(Rational(static_cast<long>(k))));
  return out;
}

// a = q b + r with deg r < deg b; b has a nonzero leading coefficient.
std::pair<std::vector<CRational>, std::vector<CRational>> divide(std::vector<CRational> a, const std::vector<CRational>& b) {
  std::vector<CRational> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, CRational(Rational(0)));
  for (std::size_t k = q.size(); k-- > 0;) {
    const CRational f = a[k + b.size() - 1] / b.back();
    q[k] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
  }
  a.resize(b.size() - 1);
  while (!a.empty() && is_zero(a.back())) a.pop_back();
  return {q, a};
}

std::vector<CRational> monic(std::vector<CRational> p) {
  const CRational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

std::vector<CRational> gcd(std::vector<CRational> a, std::vector<CRational> b) {
  while (!b.empty()) {
    auto r = divide(std::move(a), b).second;
    a = monic(std::move(b));
    b = std::move(r);
  }
  return a;
}

// Locates the roots of p numerically at `precision` bits and keeps those
// that snap to a confirmed lattice point, dividing them out of p.
void snap_roots(std::vector<CRational>& p, std::vector<CRational>& roots, long precision) {
  const auto integral = clear_denominators(p);
  const CRational lead = integral.back();
  PrecisionGuard guard(static_cast<int>(precision));
  std::vector<CReal> numeric;
  numeric.reserve(integral.size());
  for (const auto& c : integral) numeric.emplace_back(Real(c.re), Real(c.im));
  std::vector<CReal> z = initial_estimates(numeric);
  aberth(numeric, z, 200 + 20 * static_cast<int>(numeric.size()));

  const CReal lead_r(Real(lead.re), Real(lead.im));
  for (const auto& r : z) {
    if (p.size() <= 1) break;
    const CReal s = lead_r * r;
    if (!s.re.is_finite() || !s.im.is_finite()) continue;
    const CRational lattice(Rational(round_to_integer(s.re)), Rational(round_to_integer(s.im)));
    const CRational candidate = lattice / lead;
    if (!is_zero(evaluate(p, candidate))) continue;
    p = deflate(p, candidate);
    roots.push_back(candidate);
  }
}

std::vector<CRational> nonzero_exact_roots(std::vector<CRational> p) {
  std::vector<CRational> roots;
  const long base = 128 + 2 * static_cast<long>(max_bits(clear_denominators(p)));
  // Simple roots are accurate to about the working precision, so a couple of
  // doublings cover clustering; repeated roots are split off below.
  for (long precision = base; precision <= 4 * base && p.size() > 1; precision *= 2) snap_roots(p, roots, precision);
  if (p.size() > 1) {
    auto g = gcd(p, derivative(p));
    if (g.size() <= 1) {
      throw RecoveryError("root finding failed: " + std::to_string(p.size() - 1) + " roots are not rational at up to " +
                          std::to_string(4 * base) + " bits");
    }
    // The squarefree part has the same roots, each simple.
    for (const auto& r : nonzero_exact_roots(divide(p, g).first)) {
      while (p.size() > 1 && is_zero(evaluate(p, r))) {
        p = deflate(p, r);
        roots.push_back(r);
      }
    }
    if (p.size() > 1) throw RecoveryError("root finding failed: multiplicities do not add up");
  }
  return roots;
}

}  // namespace

std::vector<CRational> exact_roots(std::vector<CRational> p) {
  trim_leading_zeros(p);
  std::vector<CRational> roots;
  std::size_t zeros = 0;
  while (zeros < p.size() && is_zero(p[zeros])) ++zeros;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(Rational(0));
  if (p.size() > 1) {
    const auto rest = nonzero_exact_roots(std::move(p));
    roots.insert(roots.end(), rest.begin(), rest.end());
  }
  sort_roots(roots);
  return roots;
}

}  // namespace polyrecon
