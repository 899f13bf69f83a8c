#include "polyrecon/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "polyrecon/metrics.hpp"
#include "polyrecon/oracle.hpp"

namespace polyrecon {

int facets_for_vertices(int dim, std::size_t n_vertices) {
  if (dim == 2 && n_vertices >= 3) return static_cast<int>(n_vertices);
  if (dim == 3 && n_vertices >= 4 && n_vertices % 2 == 0) return static_cast<int>(n_vertices + 4) / 2;
  throw PreconditionError("no facet count gives a simple " + std::to_string(dim) + "-polytope with " +
                          std::to_string(n_vertices) + " vertices");
}

void validate_sweep(const SweepConfig& config) {
  if (config.n_values.empty()) throw PreconditionError("sweep needs at least one N");
  if (config.bits.empty()) throw PreconditionError("sweep needs at least one bit count");
  if (config.trials < 1) throw PreconditionError("trial count must be at least 1");
  for (int b : config.bits) {
    if (b < ScalarMode::kMinBits) throw PreconditionError("bit count " + std::to_string(b) + " below minimum");
  }
  for (auto n : config.n_values) facets_for_vertices(config.dim, n);
}

double median(std::vector<double> values) {
  if (values.empty()) return kFailedDistance;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2) return values[mid];
  return (values[mid - 1] + values[mid]) / 2;
}

std::optional<int> SweepResult::min_bits(std::size_t row, double target) const {
  std::optional<int> best;
  for (std::size_t c = 0; c < config.bits.size(); ++c) {
    if (cell(row, c).median <= target && (!best || config.bits[c] < *best)) best = config.bits[c];
  }
  return best;
}

int SweepResult::inversions(std::size_t row) const {
  int count = 0;
  for (std::size_t c = 0; c + 1 < config.bits.size(); ++c) {
    if (cell(row, c + 1).median > cell(row, c).median) ++count;
  }
  return count;
}

namespace {

struct TrialPolytope {
  std::uint64_t seed;
  Polytope polytope;
};

TrialPolytope trial_polytope(int dim, std::size_t n, std::uint64_t start) {
  const int facets = facets_for_vertices(dim, n);
  for (std::uint64_t s = start; s < start + 1000; ++s) {
    try {
      auto p = random_simple_polytope(dim, facets, s);
      if (p.size() == n) return {s, std::move(p)};
    } catch (const GeometryError&) {
    }
  }
  throw GeometryError("no " + std::to_string(n) + "-vertex polytope within 1000 seeds of " + std::to_string(start));
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  validate_sweep(config);
  SweepResult result;
  result.config = config;
  const std::size_t rows = config.n_values.size();
  const std::size_t cols = config.bits.size();
  const auto trials = static_cast<std::size_t>(config.trials);

  // Polytopes are drawn up front so the set does not depend on scheduling.
  std::vector<std::vector<Polytope>> polytopes(rows);
  result.trial_polytope_seeds.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint64_t next = config.seed * 1000003 + config.n_values[r] * 10007;
    for (std::size_t t = 0; t < trials; ++t) {
      auto tp = trial_polytope(config.dim, config.n_values[r], next);
      next = tp.seed + 1;
      result.trial_polytope_seeds[r].push_back(tp.seed);
      polytopes[r].push_back(std::move(tp.polytope));
    }
  }
  result.cells.resize(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto& cell = result.cells[r * cols + c];
      cell.n = config.n_values[r];
      cell.bits = config.bits[c];
      cell.distances.assign(trials, kFailedDistance);
      cell.errors.assign(trials, std::nullopt);
      cell.attempts.assign(trials, 0);
    }
  }

  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    for (std::size_t task = next_task++; task < rows * trials; task = next_task++) {
      const std::size_t r = task / trials;
      const std::size_t t = task % trials;
      PolytopeMomentSource source(polytopes[r][t]);
      for (std::size_t c = 0; c < cols; ++c) {
        auto& cell = result.cells[r * cols + c];
        try {
          const auto report = reconstruct(source, config.dim, config.n_values[r], ScalarMode::floating(config.bits[c]),
                                          config.seed + t, config.method);
          cell.attempts[t] = report.attempts.size();
          cell.distances[t] = vertex_set_distance(source.polytope().vertices, report.vertices).value;
        } catch (const ReconstructionFailure& e) {
          cell.attempts[t] = e.report().attempts.size();
          cell.errors[t] = e.report().attempts.empty() ? e.what() : *e.report().attempts.back().error;
        } catch (const Error& e) {
          cell.errors[t] = e.what();
        }
      }
    }
  };
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& cell : result.cells) cell.median = median(cell.distances);
  return result;
}

Json sweep_to_json(const SweepResult& result) {
  const auto& config = result.config;
  Json cells = Json::array();
  for (const auto& cell : result.cells) {
    Json distances = Json::array();
    for (double d : cell.distances) distances.push_back(std::isfinite(d) ? Json(d) : Json(nullptr));
    Json failures = Json::array();
    for (std::size_t t = 0; t < cell.errors.size(); ++t) {
      if (cell.errors[t]) failures.push_back(Json{{"trial", t}, {"error", *cell.errors[t]}});
    }
    cells.push_back(Json{{"N", cell.n},
                         {"bits", cell.bits},
                         {"median", std::isfinite(cell.median) ? Json(cell.median) : Json(nullptr)},
                         {"distances", distances},
                         {"frame_attempts", cell.attempts},
                         {"failures", failures}});
  }
  Json table = Json::array();
  for (std::size_t r = 0; r < config.n_values.size(); ++r) {
    Json row{{"N", config.n_values[r]}};
    Json min_bits = Json::object();
    for (double target : config.targets) {
      char key[32];
      std::snprintf(key, sizeof key, "%g", target);
      const auto b = result.min_bits(r, target);
      min_bits[key] = b ? Json(*b) : Json(nullptr);
    }
    row["min_bits"] = min_bits;
    row["inversions"] = result.inversions(r);
    row["polytope_seeds"] = result.trial_polytope_seeds[r];
    table.push_back(std::move(row));
  }
  return Json{{"generated_at", utc_timestamp()},
              {"format", kSweepFormat},
              {"dim", config.dim},
              {"method", to_string(config.method)},
              {"trials", config.trials},
              {"seed", config.seed},
              {"n_values", config.n_values},
              {"bits", config.bits},
              {"targets", config.targets},
              {"table", table},
              {"cells", cells}};
}

std::string sweep_summary(const SweepResult& result) {
  const auto& config = result.config;
  std::ostringstream out;
  out << "minimum bits reaching the median error target (" << config.trials << " trials, d=" << config.dim << ")\n";
  out << "     N";
  char buf[64];
  for (double target : config.targets) {
    std::snprintf(buf, sizeof buf, " %9g", target);
    out << buf;
  }
  out << "  inversions\n";
  for (std::size_t r = 0; r < config.n_values.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%6zu", config.n_values[r]);
    out << buf;
    for (double target : config.targets) {
      const auto b = result.min_bits(r, target);
      if (b) {
        std::snprintf(buf, sizeof buf, " %4d bits", *b);
      } else {
        std::snprintf(buf, sizeof buf, " %9s", "-");
      }
      out << buf;
    }
    out << "  " << result.inversions(r) << '\n';
  }
  out << "\nmedian vertex-set distance\n  bits";
  for (auto n : config.n_values) {
    std::snprintf(buf, sizeof buf, " %10s", ("N=" + std::to_string(n)).c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t c = 0; c < config.bits.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%6d", config.bits[c]);
    out << buf;
    for (std::size_t r = 0; r < config.n_values.size(); ++r) {
      const double m = result.cell(r, c).median;
      if (std::isfinite(m)) {
        std::snprintf(buf, sizeof buf, " %10.3e", m);
      } else {
        std::snprintf(buf, sizeof buf, " %10s", "fail");
      }
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

Vec random_direction(std::mt19937_64& rng, std::size_t d) {
  for (;;) {
    Vec z;
    bool nonzero = false;
    for (std::size_t k = 0; k < d; ++k) {
      const long x = static_cast<long>(rng() % 19) - 9;
      nonzero = nonzero || x != 0;
      z.emplace_back(x);
    }
    if (nonzero) return z;
  }
}

}  // namespace

VerifyReport verify_polytope(const Polytope& polytope, const VerifyOptions& options) {
  VerifyReport report;
  MonomialOracle oracle(polytope);
  std::mt19937_64 rng(options.seed);
  const auto d = static_cast<std::size_t>(polytope.dim);
  auto fail = [&](const std::string& what, const Direction& z) {
    report.failures.push_back(what + " for z=" + z.to_string());
  };
  int drawn = 0;
  while (report.directions_checked < options.directions) {
    if (++drawn > 100 * options.directions) throw PreconditionError("could not draw non-degenerate directions");
    const Direction real = Direction::real(random_direction(rng, d));
    const Vec z_im = random_direction(rng, d);
    Direction cplx = Direction::complex(real.z_re, z_im);
    try {
      validate_direction(cplx);
      vertex_terms<Rational>(polytope, real);
      vertex_terms<Complex<Rational>>(polytope, cplx);
    } catch (const DegenerateDirection&) {
      continue;
    } catch (const PreconditionError&) {
      continue;
    }
    ++report.directions_checked;
    for (const auto& x : verify_zero_identities<Rational>(polytope, real)) {
      ++report.identity_checks;
      if (!is_zero(x)) fail("identity sum is " + format_rational(x), real);
    }
    for (const auto& x : verify_zero_identities<Complex<Rational>>(polytope, cplx)) {
      ++report.identity_checks;
      if (!is_zero(x)) fail("complex identity sum is nonzero", cplx);
    }
    const auto brion = axial_moments<Rational>(polytope, real, options.max_j + 1);
    for (unsigned j = 0; j <= options.max_j; ++j) {
      ++report.oracle_checks;
      const Rational expected = oracle.integrate_linear_power(j, real.z_re);
      if (brion[j] != expected) {
        fail("mu_" + std::to_string(j) + " = " + format_rational(brion[j]) + " but oracle gives " +
                 format_rational(expected),
             real);
      }
    }
    const auto brion_c = axial_moments<Complex<Rational>>(polytope, cplx, options.max_j_complex + 1);
    for (unsigned j = 0; j <= options.max_j_complex; ++j) {
      ++report.complex_oracle_checks;
      const auto expected = oracle.integrate_complex_power(j, cplx.z_re, *cplx.z_im);
      if (brion_c[j].re != expected.re || brion_c[j].im != expected.im) {
        fail("complex mu_" + std::to_string(j) + " differs from the oracle", cplx);
      }
    }
  }
  return report;
}

}  // namespace polyrecon
