#include "polyrecon/arith.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace polyrecon {

ScalarMode ScalarMode::exact(bool complex_enabled) {
  return ScalarMode{Kind::ExactRational, 0, complex_enabled};
}

ScalarMode ScalarMode::floating(int bits, bool complex_enabled) {
  if (bits < kMinBits) {
    throw PreconditionError("float precision must be at least " + std::to_string(kMinBits) + " bits");
  }
  return ScalarMode{Kind::Float, bits, complex_enabled};
}

ScalarMode ScalarMode::parse(std::string_view text) {
  if (text == "rational" || text == "exact") return exact();
  constexpr std::string_view prefix = "float:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string_view digits = text.substr(prefix.size());
    int bits = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw PreconditionError("bad mode string: " + std::string(text));
    }
    return floating(bits);
  }
  throw PreconditionError("bad mode string: " + std::string(text));
}

std::string ScalarMode::to_string() const {
  return is_exact() ? std::string("rational") : "float:" + std::to_string(bits);
}

Rational trim_to_precision(const Rational& x, int k) {
  if (k < 1) throw PreconditionError("trim precision must be at least 1 bit");
  PrecisionGuard guard(k);
  return Real(x).to_rational();
}

Real trim_to_precision(const Real& x, int k) {
  if (k < 1) throw PreconditionError("trim precision must be at least 1 bit");
  if (!x.is_finite()) throw PreconditionError("non-finite input");
  PrecisionGuard guard(k);
  Real out;
  mpfr_set(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real trim_to_precision(double x, int k) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite input");
  PrecisionGuard guard(53);
  return trim_to_precision(Real(x), k);
}

Rational rationalize(const Rational& x, const Integer& denominator_bound) {
  if (denominator_bound < 1) throw PreconditionError("denominator bound must be positive");
  if (x.get_den() <= denominator_bound) return x;

  // Convergents h/k of the continued fraction of x.
  Integer h_prev2 = 0, h_prev = 1;
  Integer k_prev2 = 1, k_prev = 0;
  Integer num = x.get_num();
  Integer den = x.get_den();
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const Integer k_next = a * k_prev + k_prev2;
    if (k_next > denominator_bound) {
      // Largest admissible semiconvergent against the last convergent.
      const Integer m = (denominator_bound - k_prev2) / k_prev;
      const Rational convergent(h_prev, k_prev);
      const Rational semi(m * h_prev + h_prev2, m * k_prev + k_prev2);
      if (m == 0) return convergent;
      const Rational err_conv = abs(x - convergent);
      const Rational err_semi = abs(x - semi);
      Rational out = err_semi < err_conv ? semi : convergent;
      out.canonicalize();
      return out;
    }
    const Integer h_next = a * h_prev + h_prev2;
    h_prev2 = h_prev;
    h_prev = h_next;
    k_prev2 = k_prev;
    k_prev = k_next;
    const Integer rem = num - a * den;
    num = den;
    den = rem;
  }
  Rational out(h_prev, k_prev);
  out.canonicalize();
  return out;
}

Rational rationalize(const Real& x, const Integer& denominator_bound) {
  if (!x.is_finite()) throw PreconditionError("non-finite input");
  return rationalize(x.to_rational(), denominator_bound);
}

Rational rationalize(double x, const Integer& denominator_bound) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite input");
  Rational exact(x);  // gmp converts doubles exactly
  return rationalize(exact, denominator_bound);
}

namespace {

Integer floor_of(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

}  // namespace

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw PreconditionError("empty interval");
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) {
    Rational neg_hi = -hi;
    Rational neg_lo = -lo;
    return -simplest_rational_between(neg_hi, neg_lo);
  }
  const Integer c = ceil_of(lo);
  if (Rational(c) <= hi) return Rational(c);
  // Both ends inside (n, n+1).
  const Integer n = floor_of(lo);
  const Rational inner_lo = 1 / (hi - n);
  const Rational inner_hi = 1 / (lo - n);
  Rational out = n + 1 / simplest_rational_between(inner_lo, inner_hi);
  out.canonicalize();
  return out;
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> PreconditionError { return PreconditionError("malformed number: '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num, den;
    if (num.set_str(std::string(text.substr(0, slash)), 10) != 0) throw fail();
    if (den.set_str(std::string(text.substr(slash + 1)), 10) != 0) throw fail();
    if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  bool negative = false;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    if (pos < text.size() && text[pos] == '+') ++pos;
    if (pos == text.size()) throw fail();
    long exp = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), exp);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw fail();
    scale += exp;
    pos = text.size();
  }
  if (pos != text.size()) throw fail();

  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational out = scale < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  out.canonicalize();
  return out;
}

std::string format_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace polyrecon
