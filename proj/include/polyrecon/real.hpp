#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>

namespace polyrecon {

using Integer = mpz_class;
using Rational = mpq_class;

// Binary floating point number with a runtime mantissa width, backed by MPFR.
//
// Every arithmetic result is rounded (to nearest, ties to even) to the
// calling thread's working precision, which is set with PrecisionGuard. This
// mirrors a "RealField(k)" style model where a whole computation runs at k bits.
// Copies keep the precision of their source.
class Real {
 public:
  Real();
  Real(int value);   // NOLINT(google-explicit-constructor)
  Real(long value);  // NOLINT(google-explicit-constructor)
  explicit Real(double value);
  explicit Real(const Integer& value);
  explicit Real(const Rational& value);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static int working_precision();

  int precision() const;
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  bool is_zero() const;
  bool is_finite() const;
  int sign() const;
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent() const;

  double to_double() const;
  // Exact value; every finite binary float is a dyadic rational.
  Rational to_rational() const;
  // Scientific notation with `digits` significant decimal digits (0 = enough
  // to identify the value at its precision).
  std::string to_string(int digits = 0) const;

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real log2(const Real& x);
Real pow(const Real& x, const Real& y);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
// 2^e at working precision.
Real exp2i(long e);

// Sets the calling thread's working precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  int saved_;
};

}  // namespace polyrecon
