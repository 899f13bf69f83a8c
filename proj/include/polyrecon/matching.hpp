#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyrecon/moments.hpp"
#include "polyrecon/recovery.hpp"

namespace polyrecon {

// z_re plus d-1 further directions; together linearly independent.
struct DirectionFrame {
  Vec z_re;
  std::vector<Vec> z_others;

  int dim() const { return static_cast<int>(z_re.size()); }
  Direction plane(std::size_t j) const { return Direction::complex(z_re, z_others.at(j)); }
};

// Small integer vectors with entries in [-9, 9], redrawn until the d x d
// determinant is nonzero. Deterministic per seed.
DirectionFrame choose_direction_frame(int dim, std::uint64_t seed, int retry_budget = 100);

// Throws PreconditionError unless the frame is square and independent.
void validate_frame(const DirectionFrame& frame);

// R is Rational (exact mode) or Real (float mode).
template <class R>
using ProjectionPair = std::pair<R, R>;

template <class R>
struct PlaneMatch {
  Direction direction;
  std::vector<ProjectionPair<R>> pairs;  // (<v,z_re>, <v,z_j>) ascending
  ProjectionSet<Complex<R>> projections;
};

// Recovers the complex projections <v,z_re> + i <v,z_j> from 2 N_max scaled
// coefficients (2 N_max + 1 for Prony) and splits them into pairs. Float mode
// expects the working precision to be mode.bits. Equal p_re values (to
// 2^(-bits/2) relative in float mode) throw DegenerateDirection.
template <class R>
PlaneMatch<R> match_plane(MomentSource& source, const Vec& z_re, const Vec& z_j, std::size_t n_max,
                          const ScalarMode& mode, RecoveryMethod method = RecoveryMethod::Pade);

template <class R>
struct MatchedProjections {
  std::vector<std::vector<ProjectionPair<R>>> planes;
  std::vector<R> consensus_re;
  R tolerance{};  // tau_align used
};

// Element-wise median of the sorted p_re lists; every plane must be within
// tau_align of it (exact equality in exact mode, 2^(-bits/4) times the
// spread of the consensus in float mode). Throws RecoveryError("inconsistent
// N") or RecoveryError("plane alignment failed: plane j ...").
template <class R>
MatchedProjections<R> align_planes(const std::vector<std::vector<ProjectionPair<R>>>& planes, const ScalarMode& mode);

// Solves [z_re; z_1; ..; z_{d-1}] v = (consensus_re[i], p_1[i], .., p_{d-1}[i]).
template <class R>
std::vector<std::vector<R>> assemble_vertices(const MatchedProjections<R>& matched, const DirectionFrame& frame);

struct PlaneReport {
  Direction direction;
  std::size_t estimated_N = 0;
  RecoveryDiagnostics diagnostics;
};

struct AttemptReport {
  std::uint64_t frame_seed = 0;
  DirectionFrame frame;
  std::vector<PlaneReport> planes;
  std::optional<std::string> error;
};

struct ReconstructionReport {
  int dim = 0;
  ScalarMode mode;
  std::uint64_t seed = 0;
  std::size_t n_max = 0;
  RecoveryMethod method = RecoveryMethod::Pade;
  // Exact vertices; in float mode the exact values of the computed binary
  // floats.
  std::vector<Vec> vertices;
  std::size_t estimated_N = 0;
  std::vector<AttemptReport> attempts;
  std::size_t moments_used = 0;
};

// Thrown when every frame failed; carries the full trail.
class ReconstructionFailure : public ReconstructionError {
 public:
  ReconstructionFailure(const std::string& what, ReconstructionReport report)
      : ReconstructionError(what), report_(std::move(report)) {}
  const ReconstructionReport& report() const { return report_; }

 private:
  ReconstructionReport report_;
};

inline constexpr int kFrameRetryBudget = 20;

// choose_direction_frame -> match_plane x (d-1) -> align_planes ->
// assemble_vertices, resampling the frame (seed, seed+1, ...) on degenerate
// directions and recovery failures.
ReconstructionReport reconstruct(MomentSource& source, int dim, std::size_t n_max, const ScalarMode& mode,
                                 std::uint64_t seed, RecoveryMethod method = RecoveryMethod::Pade,
                                 int retry_budget = kFrameRetryBudget);

// A single attempt with a given frame (e.g. for recorded moments). Throws
// ReconstructionFailure on error.
ReconstructionReport reconstruct_with_frame(MomentSource& source, const DirectionFrame& frame, std::size_t n_max,
                                            const ScalarMode& mode, RecoveryMethod method = RecoveryMethod::Pade);

}  // namespace polyrecon
