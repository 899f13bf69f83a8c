#include "polyrecon/matching.hpp"

#include <algorithm>
#include <random>

namespace polyrecon {

DirectionFrame choose_direction_frame(int dim, std::uint64_t seed, int retry_budget) {
  if (dim < 2) throw PreconditionError("direction frame needs dimension >= 2");
  constexpr long kRange = 9;
  std::mt19937_64 rng(seed);
  const auto d = static_cast<std::size_t>(dim);
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    std::vector<Vec> rows(d);
    for (auto& row : rows) {
      for (std::size_t k = 0; k < d; ++k) {
        row.emplace_back(static_cast<long>(rng() % (2 * kRange + 1)) - kRange);
      }
    }
    Matrix<Rational> m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    if (sgn(determinant(std::move(m))) == 0) continue;
    DirectionFrame frame;
    frame.z_re = rows[0];
    frame.z_others.assign(rows.begin() + 1, rows.end());
    return frame;
  }
  throw PreconditionError("direction frame retry budget exhausted");
}

void validate_frame(const DirectionFrame& frame) {
  const auto d = frame.z_re.size();
  if (d < 2) throw PreconditionError("direction frame needs dimension >= 2");
  if (frame.z_others.size() != d - 1) throw PreconditionError("direction frame needs d-1 further directions");
  Matrix<Rational> m(d, d);
  for (std::size_t j = 0; j < d; ++j) m(0, j) = frame.z_re[j];
  for (std::size_t i = 1; i < d; ++i) {
    if (frame.z_others[i - 1].size() != d) throw PreconditionError("direction frame dimensions differ");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = frame.z_others[i - 1][j];
  }
  if (sgn(determinant(std::move(m))) == 0) throw PreconditionError("direction frame is not linearly independent");
}

namespace {

template <class R>
R to_field(const Rational& x) {
  if constexpr (std::is_same_v<R, Rational>) {
    return x;
  } else {
    return R(x);
  }
}

template <class R>
R abs_value(const R& x) {
  return abs(x);
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }
Real midpoint(const Real& a, const Real& b) { return ldexp(a + b, -1); }

}  // namespace

template <class R>
PlaneMatch<R> match_plane(MomentSource& source, const Vec& z_re, const Vec& z_j, std::size_t n_max,
                          const ScalarMode& mode, RecoveryMethod method) {
  using F = Complex<R>;
  static_assert(std::is_same_v<R, Rational> || std::is_same_v<R, Real>);
  if (mode.is_exact() != std::is_same_v<R, Rational>) throw PreconditionError("scalar mode does not match field");
  PlaneMatch<R> out;
  out.direction = Direction::complex(z_re, z_j);
  const int d = source.dim();
  if (out.direction.dim() != static_cast<std::size_t>(d)) throw PreconditionError("direction dimension mismatch");
  if (n_max < 1) throw PreconditionError("N_max must be at least 1");
  const std::size_t coefficients = 2 * n_max + (method == RecoveryMethod::Prony ? 1 : 0);
  if (coefficients <= static_cast<std::size_t>(d)) throw PreconditionError("N_max too small for the dimension");
  const auto seq = source.moments(out.direction, coefficients - static_cast<std::size_t>(d), mode);
  const auto mu = moments_as<F>(seq);
  const auto c = scaled_coefficients<F>(mu, d);
  out.projections = projections_from_coefficients<F>(c, method);
  if (out.projections.estimated_N > n_max) {
    throw RecoveryError("estimated N=" + std::to_string(out.projections.estimated_N) + " exceeds N_max=" +
                        std::to_string(n_max));
  }
  for (const auto& x : out.projections.values) out.pairs.emplace_back(x.re, x.im);
  std::sort(out.pairs.begin(), out.pairs.end());
  for (std::size_t i = 1; i < out.pairs.size(); ++i) {
    const R gap = out.pairs[i].first - out.pairs[i - 1].first;
    bool tie = false;
    if constexpr (std::is_same_v<R, Rational>) {
      tie = sgn(gap) == 0;
    } else {
      const R scale = max(Real(1), max(abs(out.pairs[i].first), abs(out.pairs[i - 1].first)));
      tie = gap <= exp2i(-Real::working_precision() / 2) * scale;
    }
    if (tie) {
      throw DegenerateDirection("coincident projections on z_re " + out.direction.to_string() + " at sorted index " +
                                std::to_string(i));
    }
  }
  return out;
}

template <class R>
MatchedProjections<R> align_planes(const std::vector<std::vector<ProjectionPair<R>>>& planes, const ScalarMode& mode) {
  if (planes.empty()) throw PreconditionError("no planes to align");
  const std::size_t n = planes.front().size();
  for (std::size_t j = 1; j < planes.size(); ++j) {
    if (planes[j].size() != n) {
      throw RecoveryError("inconsistent N: plane 0 has " + std::to_string(n) + " projections, plane " +
                          std::to_string(j) + " has " + std::to_string(planes[j].size()));
    }
  }
  MatchedProjections<R> out;
  out.planes = planes;
  std::vector<R> column;
  for (std::size_t i = 0; i < n; ++i) {
    column.clear();
    for (const auto& plane : planes) column.push_back(plane[i].first);
    std::sort(column.begin(), column.end());
    const std::size_t mid = column.size() / 2;
    out.consensus_re.push_back(column.size() % 2 ? column[mid] : midpoint(column[mid - 1], column[mid]));
  }
  if constexpr (std::is_same_v<R, Real>) {
    if (n > 0) out.tolerance = exp2i(-mode.bits / 4) * (out.consensus_re.back() - out.consensus_re.front());
  } else {
    out.tolerance = R(0);
  }
  for (std::size_t j = 0; j < planes.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const R dev = abs_value<R>(planes[j][i].first - out.consensus_re[i]);
      if (dev > out.tolerance) {
        std::string amount;
        if constexpr (std::is_same_v<R, Rational>) {
          amount = format_rational(dev);
        } else {
          amount = dev.to_string(6);
        }
        throw RecoveryError("plane alignment failed: plane " + std::to_string(j) + " deviates by " + amount +
                            " at sorted index " + std::to_string(i));
      }
    }
  }
  return out;
}

template <class R>
std::vector<std::vector<R>> assemble_vertices(const MatchedProjections<R>& matched, const DirectionFrame& frame) {
  const auto d = frame.z_re.size();
  if (matched.planes.size() != d - 1) throw PreconditionError("need d-1 matched planes");
  Matrix<R> a(d, d);
  for (std::size_t j = 0; j < d; ++j) a(0, j) = to_field<R>(frame.z_re[j]);
  for (std::size_t i = 1; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a(i, j) = to_field<R>(frame.z_others[i - 1][j]);
  }
  std::vector<std::vector<R>> out;
  for (std::size_t v = 0; v < matched.consensus_re.size(); ++v) {
    std::vector<R> b{matched.consensus_re[v]};
    for (const auto& plane : matched.planes) b.push_back(plane[v].second);
    auto x = solve_full_pivot(a, std::move(b));
    if (!x) throw PreconditionError("singular direction frame");
    out.push_back(std::move(*x));
  }
  return out;
}

namespace {

template <class R>
std::vector<Vec> attempt(MomentSource& source, const DirectionFrame& frame, std::size_t n_max, const ScalarMode& mode,
                         RecoveryMethod method, AttemptReport& report, std::size_t& moments_used) {
  std::vector<std::vector<ProjectionPair<R>>> planes;
  const std::size_t per_plane = 2 * n_max + (method == RecoveryMethod::Prony ? 1 : 0) - frame.z_re.size();
  for (const auto& z_j : frame.z_others) {
    moments_used += per_plane;
    auto match = match_plane<R>(source, frame.z_re, z_j, n_max, mode, method);
    report.planes.push_back({match.direction, match.projections.estimated_N, match.projections.diagnostics});
    planes.push_back(std::move(match.pairs));
  }
  const auto matched = align_planes<R>(planes, mode);
  std::vector<Vec> out;
  for (const auto& v : assemble_vertices<R>(matched, frame)) {
    Vec exact;
    for (const auto& x : v) {
      if constexpr (std::is_same_v<R, Rational>) {
        exact.push_back(x);
      } else {
        exact.push_back(x.to_rational());
      }
    }
    out.push_back(std::move(exact));
  }
  return out;
}

std::vector<Vec> run_attempt(MomentSource& source, const DirectionFrame& frame, std::size_t n_max,
                             const ScalarMode& mode, RecoveryMethod method, AttemptReport& report,
                             std::size_t& moments_used) {
  validate_frame(frame);
  if (frame.dim() != source.dim()) throw PreconditionError("frame dimension differs from the moment source");
  if (mode.is_exact()) return attempt<Rational>(source, frame, n_max, mode, method, report, moments_used);
  PrecisionGuard guard(mode.bits);
  return attempt<Real>(source, frame, n_max, mode, method, report, moments_used);
}

ReconstructionReport make_report(int dim, const ScalarMode& mode, std::uint64_t seed, std::size_t n_max,
                                 RecoveryMethod method) {
  ReconstructionReport r;
  r.dim = dim;
  r.mode = mode;
  r.mode.complex_enabled = true;
  r.seed = seed;
  r.n_max = n_max;
  r.method = method;
  return r;
}

}  // namespace

ReconstructionReport reconstruct(MomentSource& source, int dim, std::size_t n_max, const ScalarMode& mode,
                                 std::uint64_t seed, RecoveryMethod method, int retry_budget) {
  if (dim != source.dim()) throw PreconditionError("dimension differs from the moment source");
  auto report = make_report(dim, mode, seed, n_max, method);
  for (int k = 0; k < retry_budget; ++k) {
    AttemptReport a;
    a.frame_seed = seed + static_cast<std::uint64_t>(k);
    a.frame = choose_direction_frame(dim, a.frame_seed);
    try {
      report.vertices = run_attempt(source, a.frame, n_max, mode, method, a, report.moments_used);
      report.estimated_N = report.vertices.size();
      report.attempts.push_back(std::move(a));
      return report;
    } catch (const DegenerateDirection& e) {
      a.error = e.what();
    } catch (const RecoveryError& e) {
      a.error = e.what();
    }
    report.attempts.push_back(std::move(a));
  }
  std::string trail;
  for (const auto& a : report.attempts) trail += "\n  frame seed " + std::to_string(a.frame_seed) + ": " + *a.error;
  throw ReconstructionFailure("reconstruction failed after " + std::to_string(retry_budget) + " frames:" + trail,
                              std::move(report));
}

ReconstructionReport reconstruct_with_frame(MomentSource& source, const DirectionFrame& frame, std::size_t n_max,
                                            const ScalarMode& mode, RecoveryMethod method) {
  auto report = make_report(frame.dim(), mode, 0, n_max, method);
  AttemptReport a;
  a.frame = frame;
  try {
    report.vertices = run_attempt(source, frame, n_max, mode, method, a, report.moments_used);
    report.estimated_N = report.vertices.size();
    report.attempts.push_back(std::move(a));
    return report;
  } catch (const DegenerateDirection& e) {
    a.error = e.what();
  } catch (const RecoveryError& e) {
    a.error = e.what();
  }
  const std::string what = "reconstruction failed: " + *a.error;
  report.attempts.push_back(std::move(a));
  throw ReconstructionFailure(what, std::move(report));
}

template PlaneMatch<Rational> match_plane<Rational>(MomentSource&, const Vec&, const Vec&, std::size_t,
                                                    const ScalarMode&, RecoveryMethod);
template PlaneMatch<Real> match_plane<Real>(MomentSource&, const Vec&, const Vec&, std::size_t, const ScalarMode&,
                                            RecoveryMethod);
template MatchedProjections<Rational> align_planes<Rational>(const std::vector<std::vector<ProjectionPair<Rational>>>&,
                                                             const ScalarMode&);
template MatchedProjections<Real> align_planes<Real>(const std::vector<std::vector<ProjectionPair<Real>>>&,
                                                     const ScalarMode&);
template std::vector<std::vector<Rational>> assemble_vertices<Rational>(const MatchedProjections<Rational>&,
                                                                        const DirectionFrame&);
template std::vector<std::vector<Real>> assemble_vertices<Real>(const MatchedProjections<Real>&,
                                                                const DirectionFrame&);

}  // namespace polyrecon
