#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polyrecon/io.hpp"
#include "polyrecon/matching.hpp"

namespace polyrecon {

// Facet count giving a simple polytope with n_vertices vertices: n for d = 2,
// (n + 4) / 2 for d = 3. Throws PreconditionError otherwise.
int facets_for_vertices(int dim, std::size_t n_vertices);

struct SweepConfig {
  int dim = 3;
  std::vector<std::size_t> n_values;
  std::vector<int> bits;
  int trials = 10;
  std::uint64_t seed = 1;
  RecoveryMethod method = RecoveryMethod::Pade;
  std::vector<double> targets{1e-3, 1e-6, 1e-9};
  // Trials run on this many threads (each thread keeps its own precision).
  unsigned jobs = 1;
};

// Throws PreconditionError for empty lists, trials < 1 or bits below the
// float minimum.
void validate_sweep(const SweepConfig& config);

inline constexpr double kFailedDistance = std::numeric_limits<double>::infinity();

struct SweepCell {
  std::size_t n = 0;
  int bits = 0;
  // One per trial; kFailedDistance when reconstruction failed.
  std::vector<double> distances;
  std::vector<std::optional<std::string>> errors;
  std::vector<std::size_t> attempts;
  double median = kFailedDistance;
};

struct SweepResult {
  SweepConfig config;
  // Trial t of row N reconstructs trial_polytope_seeds[row][t].
  std::vector<std::vector<std::uint64_t>> trial_polytope_seeds;
  std::vector<SweepCell> cells;  // row-major: n_values x bits

  const SweepCell& cell(std::size_t row, std::size_t column) const { return cells.at(row * config.bits.size() + column); }
  // Smallest swept bit count whose median meets `target`.
  std::optional<int> min_bits(std::size_t row, double target) const;
  // Number of b with median(b+1) > median(b) along a row.
  int inversions(std::size_t row) const;
};

// Median of the values, infinite entries included; for an even count the
// mean of the two middle values.
double median(std::vector<double> values);

// For each N: `trials` random polytopes with N vertices (generation seed
// derived from config.seed, N and the trial index), each reconstructed at
// every bit count with frame seed config.seed + trial. Failures are recorded
// in their cell and never stop the sweep.
SweepResult run_sweep(const SweepConfig& config);

Json sweep_to_json(const SweepResult& result);
// Table with one row per N and one column per target, listing the minimum
// bits, followed by the per-cell medians.
std::string sweep_summary(const SweepResult& result);

// Identity and oracle checks on one polytope.
struct VerifyOptions {
  int directions = 4;
  std::uint64_t seed = 1;
  unsigned max_j = 6;
  unsigned max_j_complex = 4;
};

struct VerifyReport {
  int directions_checked = 0;
  int identity_checks = 0;
  int oracle_checks = 0;
  int complex_oracle_checks = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// For random integer directions (entries in [-9, 9], degenerate ones
// redrawn): sum_v <v,z>^j D_v(z) = 0 for j < d; axial_moment equals the
// triangulation oracle for j <= max_j; complex moments equal the oracle's
// g1 + i g2 integrals for j <= max_j_complex. All exact.
VerifyReport verify_polytope(const Polytope& polytope, const VerifyOptions& options = {});

}  // namespace polyrecon
