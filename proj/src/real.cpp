#include "polyrecon/real.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace polyrecon {

namespace {

thread_local int g_working_precision = 53;

}  // namespace

int Real::working_precision() { return g_working_precision; }

Real::Real() {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(int value) : Real(static_cast<long>(value)) {}

Real::Real(long value) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Integer& value) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& value) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

int Real::precision() const { return static_cast<int>(mpfr_get_prec(value_)); }

// Results are produced at working precision, regardless of operand widths.
#define POLYRECON_REAL_BINARY(op, fn)                       \
  Real& Real::operator op(const Real& rhs) {                \
    if (mpfr_get_prec(value_) == g_working_precision) {     \
      fn(value_, value_, rhs.value_, MPFR_RNDN);            \
      return *this;                                         \
    }                                                       \
    mpfr_t out;                                             \
    mpfr_init2(out, g_working_precision);                   \
    fn(out, value_, rhs.value_, MPFR_RNDN);                 \
    mpfr_swap(value_, out);                                 \
    mpfr_clear(out);                                        \
    return *this;                                           \
  }

POLYRECON_REAL_BINARY(+=, mpfr_add)
POLYRECON_REAL_BINARY(-=, mpfr_sub)
POLYRECON_REAL_BINARY(*=, mpfr_mul)
POLYRECON_REAL_BINARY(/=, mpfr_div)

#undef POLYRECON_REAL_BINARY

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool Real::is_zero() const { return mpfr_zero_p(value_) != 0; }
bool Real::is_finite() const { return mpfr_number_p(value_) != 0; }
int Real::sign() const { return mpfr_sgn(value_); }
long Real::exponent() const { return mpfr_get_exp(value_); }

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

Rational Real::to_rational() const {
  if (!is_finite()) throw std::domain_error("non-finite input");
  if (is_zero()) return Rational(0);
  Integer mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  Rational out(mantissa);
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  out.canonicalize();
  return out;
}

std::string Real::to_string(int digits) const {
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(precision() * 0.30102999566398120)) + 1;
  }
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", digits - 1, value_);
  std::unique_ptr<char, void (*)(char*)> holder(raw, [](char* p) { mpfr_free_str(p); });
  return std::string(raw);
}

Real abs(const Real& x) {
  Real out(x);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out;
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real ldexp(const Real& x, long e) {
  Real out(x);
  if (e >= 0) {
    mpfr_mul_2ui(out.get(), out.get(), static_cast<unsigned long>(e), MPFR_RNDN);
  } else {
    mpfr_div_2ui(out.get(), out.get(), static_cast<unsigned long>(-e), MPFR_RNDN);
  }
  return out;
}

Real log2(const Real& x) {
  Real out;
  mpfr_log2(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real pow(const Real& x, const Real& y) {
  Real out;
  mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real exp2i(long e) { return ldexp(Real(1), e); }

PrecisionGuard::PrecisionGuard(int bits) : saved_(g_working_precision) {
  if (bits < MPFR_PREC_MIN) throw std::invalid_argument("precision below MPFR minimum");
  g_working_precision = bits;
}

PrecisionGuard::~PrecisionGuard() { g_working_precision = saved_; }

}  // namespace polyrecon
