#include "polyrecon/moments.hpp"

#include <algorithm>

namespace polyrecon {

namespace {

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool parallel(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  return true;
}

std::string vec_to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_rational(v[i]);
  }
  return out + ")";
}

}  // namespace

Direction Direction::real(Vec z_re) {
  Direction z{std::move(z_re), std::nullopt};
  validate_direction(z);
  return z;
}

Direction Direction::complex(Vec z_re, Vec z_im) {
  Direction z{std::move(z_re), std::move(z_im)};
  validate_direction(z);
  return z;
}

std::string Direction::to_string() const {
  std::string out = vec_to_string(z_re);
  if (z_im) out += " + i" + vec_to_string(*z_im);
  return out;
}

void validate_direction(const Direction& z) {
  if (z.z_re.empty() || is_zero_vec(z.z_re)) throw PreconditionError("direction z_re must be nonzero");
  if (z.z_im) {
    if (z.z_im->size() != z.z_re.size()) throw PreconditionError("z_re and z_im dimensions differ");
    if (is_zero_vec(*z.z_im)) throw PreconditionError("direction z_im must be nonzero");
    if (parallel(z.z_re, *z.z_im)) throw PreconditionError("z_im is parallel to z_re");
  }
}

Integer falling_factorial(long k, long d) {
  Integer out(1);
  for (long i = 0; i < d; ++i) out *= (k - i);
  return out;
}

namespace {

std::vector<Complex<Rational>> exact_moments(const Polytope& p, const Direction& z, std::size_t count) {
  std::vector<Complex<Rational>> out;
  out.reserve(count);
  if (z.is_complex()) {
    out = axial_moments<Complex<Rational>>(p, z, count);
  } else {
    for (auto& m : axial_moments<Rational>(p, z, count)) out.emplace_back(std::move(m), Rational(0));
  }
  return out;
}

MomentSequence package(const Polytope& p, const Direction& z, const std::vector<Complex<Rational>>& exact,
                       std::size_t count, const ScalarMode& mode) {
  MomentSequence seq;
  seq.dim = p.dim;
  seq.direction = z;
  seq.mode = mode;
  seq.mode.complex_enabled = z.is_complex();
  seq.moments.assign(exact.begin(), exact.begin() + static_cast<std::ptrdiff_t>(count));
  if (!mode.is_exact()) {
    for (auto& m : seq.moments) {
      m.re = trim_to_precision(m.re, mode.bits);
      m.im = trim_to_precision(m.im, mode.bits);
    }
  }
  return seq;
}

}  // namespace

MomentSequence moment_provider(const Polytope& p, const Direction& z, std::size_t count, const ScalarMode& mode) {
  if (count < 1) throw PreconditionError("moment count must be at least 1");
  validate_direction(z);
  return package(p, z, exact_moments(p, z, count), count, mode);
}

MomentSequence PolytopeMomentSource::moments(const Direction& z, std::size_t count, const ScalarMode& mode) {
  if (count < 1) throw PreconditionError("moment count must be at least 1");
  validate_direction(z);
  auto key = std::make_pair(z.z_re, z.z_im.value_or(Vec{}));
  auto it = cache_.find(key);
  if (it == cache_.end() || it->second.size() < count) {
    auto exact = exact_moments(polytope_, z, count);
    it = cache_.insert_or_assign(std::move(key), std::move(exact)).first;
  }
  served_ += count;
  return package(polytope_, z, it->second, count, mode);
}

RecordedMomentSource::RecordedMomentSource(std::vector<MomentSequence> sequences) : sequences_(std::move(sequences)) {
  if (sequences_.empty()) throw PreconditionError("no moment sequences given");
  dim_ = sequences_.front().dim;
  for (const auto& s : sequences_) {
    if (s.dim != dim_) throw PreconditionError("moment sequences of different dimensions");
  }
}

MomentSequence RecordedMomentSource::moments(const Direction& z, std::size_t count, const ScalarMode& mode) {
  for (const auto& s : sequences_) {
    if (s.direction == z && s.mode.kind == mode.kind && s.mode.bits == mode.bits && s.moments.size() >= count) {
      MomentSequence out = s;
      out.moments.resize(count);
      return out;
    }
  }
  throw PreconditionError("no recorded moments for direction " + z.to_string() + " with " + std::to_string(count) +
                          " values in mode " + mode.to_string());
}

}  // namespace polyrecon
