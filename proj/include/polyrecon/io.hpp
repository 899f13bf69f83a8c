#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyrecon/matching.hpp"
#include "polyrecon/metrics.hpp"
#include "polyrecon/moments.hpp"

namespace polyrecon {

// File formats. Every number is a lossless "p/q" string; documents are JSON
// objects tagged with a "format" field.
//
//   polyrecon-polytope/1  {dim, mode, vertices, facets: [{normal, offset}], adjacency}
//   polyrecon-moments/1   {dim, mode, direction: {z_re, z_im?}, moments}
//                         moments are strings for real directions and
//                         {re, im} objects for complex ones
//   polyrecon-report/1    reconstruction report (see report_to_json)
//   polyrecon-sweep/1     precision sweep table (see experiment.hpp)
//
// Reports carry a "generated_at" member as their first line after the brace;
// everything else is a deterministic function of the inputs.
using Json = nlohmann::ordered_json;

inline constexpr const char* kPolytopeFormat = "polyrecon-polytope/1";
inline constexpr const char* kMomentsFormat = "polyrecon-moments/1";
inline constexpr const char* kReportFormat = "polyrecon-report/1";
inline constexpr const char* kSweepFormat = "polyrecon-sweep/1";

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json polytope_to_json(const Polytope& p);
// Uses vertices + adjacency when present, otherwise the facets. The result is
// validated. Throws PreconditionError on malformed documents.
Polytope polytope_from_json(const Json& j);

Json moments_to_json(const MomentSequence& seq);
MomentSequence moments_from_json(const Json& j);

// UTC "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

Json diagnostics_to_json(const RecoveryDiagnostics& d);
Json report_to_json(const ReconstructionReport& report, const std::optional<VertexSetDistance>& distance = {});

// The parts of a report needed downstream.
struct LoadedReport {
  int dim = 0;
  ScalarMode mode;
  std::vector<Vec> vertices;
};
LoadedReport report_from_json(const Json& j);

Json read_json_file(const std::string& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const Json& j);

// OFF mesh of a 3-polytope: faces from its facets, each a vertex cycle
// oriented counter-clockwise seen from outside.
struct OffMesh {
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> faces;
};
OffMesh off_from_polytope(const Polytope& p);
// Exact convex hull of a 3D point set (all points are kept as OFF vertices;
// faces list the hull facets). Throws GeometryError when the points do not
// span 3D.
OffMesh off_from_points(const std::vector<Vec>& points);
// Vertex coordinates as decimals with 17 significant digits.
void write_off(std::ostream& out, const OffMesh& mesh);

}  // namespace polyrecon
