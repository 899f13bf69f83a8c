#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyrecon/arith.hpp"
#include "polyrecon/geometry.hpp"

namespace polyrecon {

// Direction z = z_re (+ i z_im). Components are exact; float-mode pipelines
// convert them at working precision.
struct Direction {
  Vec z_re;
  std::optional<Vec> z_im;

  static Direction real(Vec z_re);
  static Direction complex(Vec z_re, Vec z_im);

  bool is_complex() const { return z_im.has_value(); }
  std::size_t dim() const { return z_re.size(); }
  std::string to_string() const;

  friend bool operator==(const Direction&, const Direction&) = default;
};

// Throws PreconditionError if z_re is zero or z_im is zero/parallel to z_re.
void validate_direction(const Direction& z);

// A simulated measurement: mu_0 .. mu_{K} along a direction.
//
// Values are stored exactly. In float mode each component has already been
// trimmed to the mode's bit width, so it is a dyadic rational that converts to
// a Real of that width without further rounding.
struct MomentSequence {
  int dim = 0;
  Direction direction;
  ScalarMode mode;
  std::vector<Complex<Rational>> moments;
};

// k!/(k-d)! as an integer.
Integer falling_factorial(long k, long d);

// <v, z> in the field F (complex fields use <v,z_re> + i <v,z_im>).
template <class F>
F project(const Vec& v, const Direction& z) {
  if constexpr (is_complex_v<F>) {
    return from_rational<F>(dot(v, z.z_re), z.z_im ? dot(v, *z.z_im) : Rational(0));
  } else {
    if (z.z_im) throw PreconditionError("complex direction needs a complex field");
    return from_rational<F>(dot(v, z.z_re));
  }
}

// Per-vertex projection <v,z> and vertex coefficient D_v(z).
template <class F>
struct VertexTerms {
  std::vector<F> projections;
  std::vector<F> weights;
};

namespace detail {

inline Real euclidean_norm(const Vec& v) {
  Real s(0);
  for (const auto& x : v) {
    const Real r(x);
    s += r * r;
  }
  return sqrt(s);
}

}  // namespace detail

// D_v(z) = |det K_v| / prod_k <w_k(v), z>. Throws DegenerateDirection when a
// denominator vanishes (exactly, or below 2^(-bits/2) |w| |z| in float fields).
template <class F>
F dv(const TangentCone& cone, const Direction& z) {
  F denom(1);
  for (const auto& w : cone.edges) {
    const F pw = project<F>(w, z);
    if constexpr (is_exact_v<F>) {
      if (is_zero(pw)) throw DegenerateDirection("degenerate direction for vertex (edge orthogonal to z)");
    } else {
      Real z_norm = detail::euclidean_norm(z.z_re);
      if (z.z_im) {
        const Real im_norm = detail::euclidean_norm(*z.z_im);
        z_norm = sqrt(z_norm * z_norm + im_norm * im_norm);
      }
      const Real bound = exp2i(-Real::working_precision() / 2) * detail::euclidean_norm(w) * z_norm;
      if (magnitude(pw) < bound) throw DegenerateDirection("degenerate direction for vertex (edge nearly orthogonal to z)");
    }
    denom *= pw;
  }
  return from_rational<F>(cone.det_abs) / denom;
}

template <class F>
F dv(const Polytope& p, int vertex_index, const Direction& z) {
  try {
    return dv<F>(tangent_cone(p, vertex_index), z);
  } catch (const DegenerateDirection&) {
    throw DegenerateDirection("degenerate direction for vertex " + std::to_string(vertex_index));
  }
}

template <class F>
VertexTerms<F> vertex_terms(const Polytope& p, const Direction& z) {
  if (z.dim() != static_cast<std::size_t>(p.dim)) throw PreconditionError("direction dimension mismatch");
  VertexTerms<F> out;
  out.projections.reserve(p.size());
  out.weights.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.projections.push_back(project<F>(p.vertices[i], z));
    out.weights.push_back(dv<F>(p, static_cast<int>(i), z));
  }
  return out;
}

// c_k = sum_v <v,z>^k D_v(z) for k = 0..count-1.
template <class F>
std::vector<F> power_sums(const VertexTerms<F>& terms, std::size_t count) {
  std::vector<F> out(count, F(0));
  for (std::size_t v = 0; v < terms.projections.size(); ++v) {
    F term = terms.weights[v];
    for (std::size_t k = 0; k < count; ++k) {
      out[k] += term;
      if (k + 1 < count) term *= terms.projections[v];
    }
  }
  return out;
}

// mu_j(z) = j! (-1)^d / (j+d)! * sum_v <v,z>^(j+d) D_v(z).
template <class F>
F axial_moment(const Polytope& p, unsigned j, const Direction& z) {
  const auto terms = vertex_terms<F>(p, z);
  F sum(0);
  for (std::size_t v = 0; v < p.size(); ++v) {
    F term = terms.weights[v];
    for (unsigned k = 0; k < j + static_cast<unsigned>(p.dim); ++k) term *= terms.projections[v];
    sum += term;
  }
  Rational scale(1, falling_factorial(static_cast<long>(j) + p.dim, p.dim));
  if (p.dim % 2 != 0) scale = -scale;
  return sum * from_rational<F>(scale);
}

// mu_0 .. mu_{count-1} from one pass over the vertices.
template <class F>
std::vector<F> axial_moments(const Polytope& p, const Direction& z, std::size_t count) {
  const auto c = power_sums(vertex_terms<F>(p, z), count + static_cast<std::size_t>(p.dim));
  std::vector<F> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    Rational scale(1, falling_factorial(static_cast<long>(j) + p.dim, p.dim));
    if (p.dim % 2 != 0) scale = -scale;
    out.push_back(c[j + static_cast<std::size_t>(p.dim)] * from_rational<F>(scale));
  }
  return out;
}

// sum_v <v,z>^j D_v(z) for j = 0..d-1; all zero for a genuine polytope.
template <class F>
std::vector<F> verify_zero_identities(const Polytope& p, const Direction& z) {
  return power_sums(vertex_terms<F>(p, z), static_cast<std::size_t>(p.dim));
}

// c_k = 0 for k < d and c_k = k! (-1)^d / (k-d)! mu_{k-d} for k >= d.
template <class F>
std::vector<F> scaled_coefficients(std::span<const F> moments, int d) {
  std::vector<F> c(static_cast<std::size_t>(d), F(0));
  c.reserve(static_cast<std::size_t>(d) + moments.size());
  for (std::size_t j = 0; j < moments.size(); ++j) {
    Integer factor = falling_factorial(static_cast<long>(j) + d, d);
    if (d % 2 != 0) factor = -factor;
    c.push_back(moments[j] * from_rational<F>(Rational(factor)));
  }
  return c;
}

// Converts stored moments to field F at the current working precision.
template <class F>
std::vector<F> moments_as(const MomentSequence& seq) {
  std::vector<F> out;
  out.reserve(seq.moments.size());
  for (const auto& m : seq.moments) out.push_back(from_rational<F>(m.re, m.im));
  return out;
}

// Exact forward moments along z, then (float mode) each component trimmed to
// the mode's precision. The only place measurement precision enters.
MomentSequence moment_provider(const Polytope& p, const Direction& z, std::size_t count, const ScalarMode& mode);

// Anything that can answer "give me `count` moments along z in this mode".
class MomentSource {
 public:
  virtual ~MomentSource() = default;
  virtual int dim() const = 0;
  virtual MomentSequence moments(const Direction& z, std::size_t count, const ScalarMode& mode) = 0;
};

// Simulates measurements of a known polytope. Exact moments are cached per
// direction, so precision sweeps reuse them.
class PolytopeMomentSource final : public MomentSource {
 public:
  explicit PolytopeMomentSource(Polytope polytope) : polytope_(std::move(polytope)) {}

  int dim() const override { return polytope_.dim; }
  MomentSequence moments(const Direction& z, std::size_t count, const ScalarMode& mode) override;
  const Polytope& polytope() const { return polytope_; }
  std::size_t moments_served() const { return served_; }

 private:
  Polytope polytope_;
  std::map<std::pair<Vec, Vec>, std::vector<Complex<Rational>>> cache_;
  std::size_t served_ = 0;
};

// Serves previously recorded sequences (e.g. loaded from files). A request is
// answered by the first sequence with the same direction and mode holding at
// least `count` moments.
class RecordedMomentSource final : public MomentSource {
 public:
  explicit RecordedMomentSource(std::vector<MomentSequence> sequences);

  int dim() const override { return dim_; }
  MomentSequence moments(const Direction& z, std::size_t count, const ScalarMode& mode) override;
  const std::vector<MomentSequence>& sequences() const { return sequences_; }

 private:
  std::vector<MomentSequence> sequences_;
  int dim_ = 0;
};

}  // namespace polyrecon
