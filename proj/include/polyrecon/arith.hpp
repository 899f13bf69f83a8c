#pragma once

#include <string>
#include <string_view>
#include <type_traits>

#include "polyrecon/complex.hpp"
#include "polyrecon/error.hpp"
#include "polyrecon/real.hpp"

namespace polyrecon {

// The two arithmetic models: exact rationals, or k-bit binary floats.
struct ScalarMode {
  enum class Kind { ExactRational, Float };

  Kind kind = Kind::ExactRational;
  int bits = 0;  // only meaningful for Float
  bool complex_enabled = false;

  static constexpr int kMinBits = 8;

  static ScalarMode exact(bool complex_enabled = false);
  static ScalarMode floating(int bits, bool complex_enabled = false);
  // "rational" or "float:<bits>".
  static ScalarMode parse(std::string_view text);

  bool is_exact() const { return kind == Kind::ExactRational; }
  std::string to_string() const;

  friend bool operator==(const ScalarMode&, const ScalarMode&) = default;
};

// Rounds x to a k-bit mantissa (k >= 1), round-to-nearest-even. The result is
// the exact value of the rounded binary float. Float modes themselves need
// at least kMinBits.
Rational trim_to_precision(const Rational& x, int k);
Real trim_to_precision(const Real& x, int k);
Real trim_to_precision(double x, int k);

// Best rational approximation p/q with 1 <= q <= denominator_bound, found
// through continued-fraction convergents and the final semiconvergent.
Rational rationalize(const Rational& x, const Integer& denominator_bound);
Rational rationalize(const Real& x, const Integer& denominator_bound);
Rational rationalize(double x, const Integer& denominator_bound);

// Simplest rational (smallest denominator, then smallest |numerator|) inside
// the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

// "p/q", "p", or a decimal literal such as "-1.25" or "3e-2". Throws
// PreconditionError on malformed input.
Rational parse_rational(std::string_view text);
// Canonical "p/q" (or "p" when the denominator is 1).
std::string format_rational(const Rational& x);

// Complex<Real> products with one rounding per component (and far fewer
// temporaries than the generic version).
template <>
inline Complex<Real>& Complex<Real>::operator*=(const Complex<Real>& o) {
  Real r;
  Real i;
  mpfr_fmms(r.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
  mpfr_fmma(i.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
  re = std::move(r);
  im = std::move(i);
  return *this;
}

template <>
inline Complex<Real>& Complex<Real>::operator/=(const Complex<Real>& o) {
  Real den;
  Real r;
  Real i;
  mpfr_fmma(den.get(), o.re.get(), o.re.get(), o.im.get(), o.im.get(), MPFR_RNDN);
  mpfr_fmma(r.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
  mpfr_fmms(i.get(), im.get(), o.re.get(), re.get(), o.im.get(), MPFR_RNDN);
  re = r / den;
  im = i / den;
  return *this;
}

// ---------------------------------------------------------------------------
// Field traits used by the generic numeric code.

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool complex = false;
  using RealType = Rational;
};

template <>
struct FieldTraits<Complex<Rational>> {
  static constexpr bool exact = true;
  static constexpr bool complex = true;
  using RealType = Rational;
};

template <>
struct FieldTraits<Real> {
  static constexpr bool exact = false;
  static constexpr bool complex = false;
  using RealType = Real;
};

template <>
struct FieldTraits<Complex<Real>> {
  static constexpr bool exact = false;
  static constexpr bool complex = true;
  using RealType = Real;
};

template <class F>
inline constexpr bool is_exact_v = FieldTraits<F>::exact;
template <class F>
inline constexpr bool is_complex_v = FieldTraits<F>::complex;

template <class F>
F from_rational(const Rational& re, const Rational& im = Rational(0)) {
  if constexpr (is_complex_v<F>) {
    using R = typename FieldTraits<F>::RealType;
    if constexpr (std::is_same_v<R, Rational>) {
      return F(re, im);
    } else {
      return F(Real(re), Real(im));
    }
  } else {
    if (sgn(im) != 0) throw PreconditionError("complex value in a real field");
    if constexpr (std::is_same_v<F, Rational>) {
      return re;
    } else {
      return F(re);
    }
  }
}

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

template <class F>
bool is_zero(const F& x) {
  if constexpr (std::is_same_v<F, Rational>) {
    return sgn(x) == 0;
  } else if constexpr (std::is_same_v<F, Real>) {
    return x.is_zero();
  } else {
    return is_zero(x.re) && is_zero(x.im);
  }
}

template <class F>
typename FieldTraits<F>::RealType real_part(const F& x) {
  if constexpr (is_complex_v<F>) {
    return x.re;
  } else {
    return x;
  }
}

template <class F>
typename FieldTraits<F>::RealType imag_part(const F& x) {
  if constexpr (is_complex_v<F>) {
    return x.im;
  } else {
    return typename FieldTraits<F>::RealType(0);
  }
}

// |x| for floating fields.
inline Real magnitude(const Real& x) { return abs(x); }
inline Real magnitude(const Complex<Real>& x) {
  if (x.im.is_zero()) return abs(x.re);
  if (x.re.is_zero()) return abs(x.im);
  return sqrt(norm(x));
}

// Exact conversion of a floating value (each component is dyadic).
inline Complex<Rational> to_exact(const Complex<Real>& x) { return {x.re.to_rational(), x.im.to_rational()}; }
inline Rational to_exact(const Real& x) { return x.to_rational(); }

}  // namespace polyrecon
