#include "polyrecon/io.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

namespace polyrecon {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void expect_format(const Json& j, const char* format) {
  const auto& f = member(j, "format");
  if (!f.is_string() || f.get<std::string>() != format) {
    throw PreconditionError(std::string("expected format ") + format + ", got " + f.dump());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw PreconditionError("expected a rational string, got " + j.dump());
}

int dim_from_json(const Json& j) {
  const auto& d = member(j, "dim");
  if (!d.is_number_integer() || d.get<int>() < 1) throw PreconditionError("dim must be a positive integer");
  return d.get<int>();
}

ScalarMode mode_from_json(const Json& j) {
  const auto& m = member(j, "mode");
  if (!m.is_string()) throw PreconditionError("mode must be a string");
  return ScalarMode::parse(m.get<std::string>());
}

std::vector<Vec> vertices_from_json(const Json& j, int dim) {
  std::vector<Vec> out;
  for (const auto& row : member(j, "vertices")) {
    out.push_back(vec_from_json(row));
    if (out.back().size() != static_cast<std::size_t>(dim)) throw PreconditionError("vertex dimension differs from dim");
  }
  return out;
}

Json vertices_to_json(const std::vector<Vec>& vertices) {
  Json out = Json::array();
  for (const auto& v : vertices) out.push_back(vec_to_json(v));
  return out;
}

Json frame_to_json(const DirectionFrame& frame) {
  Json others = Json::array();
  for (const auto& z : frame.z_others) others.push_back(vec_to_json(z));
  return Json{{"z_re", vec_to_json(frame.z_re)}, {"z_others", others}};
}

Json direction_to_json(const Direction& z) {
  Json out{{"z_re", vec_to_json(z.z_re)}};
  if (z.z_im) out["z_im"] = vec_to_json(*z.z_im);
  return out;
}

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Orders coplanar points counter-clockwise around their centroid, seen from
// the side `normal` points to.
void order_face(std::vector<int>& face, const std::vector<Vec>& points, const Vec& normal) {
  Vec centroid(3, Rational(0));
  for (int i : face) {
    for (std::size_t k = 0; k < 3; ++k) centroid[k] += points[static_cast<std::size_t>(i)][k];
  }
  for (auto& x : centroid) x /= static_cast<long>(face.size());
  const Vec ref = points[static_cast<std::size_t>(face.front())] - centroid;
  auto upper = [&](const Vec& a) {
    const int s = sgn(dot(cross(ref, a), normal));
    return s > 0 || (s == 0 && sgn(dot(ref, a)) > 0);
  };
  std::sort(face.begin(), face.end(), [&](int i, int j) {
    const Vec a = points[static_cast<std::size_t>(i)] - centroid;
    const Vec b = points[static_cast<std::size_t>(j)] - centroid;
    const bool ua = upper(a);
    const bool ub = upper(b);
    if (ua != ub) return ua;
    return sgn(dot(cross(a, b), normal)) > 0;
  });
}

std::string to_decimal(const Rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x.get_d());
  return buf;
}

}  // namespace

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of rationals, got " + j.dump());
  Vec out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json polytope_to_json(const Polytope& p) {
  Json facets = Json::array();
  for (const auto& h : p.facets) facets.push_back(Json{{"normal", vec_to_json(h.normal)}, {"offset", format_rational(h.offset)}});
  return Json{{"format", kPolytopeFormat},
              {"dim", p.dim},
              {"mode", "rational"},
              {"vertices", vertices_to_json(p.vertices)},
              {"facets", facets},
              {"adjacency", p.neighbors}};
}

Polytope polytope_from_json(const Json& j) {
  expect_format(j, kPolytopeFormat);
  const int dim = dim_from_json(j);
  if (j.contains("vertices") && j.contains("adjacency")) {
    auto vertices = vertices_from_json(j, dim);
    auto neighbors = j.at("adjacency").get<std::vector<std::vector<int>>>();
    auto p = polytope_from_vertices_and_edges(dim, std::move(vertices), std::move(neighbors));
    validate_polytope(p);
    return p;
  }
  std::vector<Halfspace> halfspaces;
  for (const auto& h : member(j, "facets")) {
    halfspaces.push_back({vec_from_json(member(h, "normal")), rational_from_json(member(h, "offset"))});
    if (halfspaces.back().normal.size() != static_cast<std::size_t>(dim)) {
      throw PreconditionError("facet normal dimension differs from dim");
    }
  }
  auto p = intersect_halfspaces(halfspaces);
  validate_polytope(p);
  return p;
}

Json moments_to_json(const MomentSequence& seq) {
  Json values = Json::array();
  for (const auto& m : seq.moments) {
    if (seq.direction.is_complex()) {
      values.push_back(Json{{"re", format_rational(m.re)}, {"im", format_rational(m.im)}});
    } else {
      values.push_back(format_rational(m.re));
    }
  }
  return Json{{"format", kMomentsFormat},
              {"dim", seq.dim},
              {"mode", seq.mode.to_string()},
              {"direction", direction_to_json(seq.direction)},
              {"moments", values}};
}

MomentSequence moments_from_json(const Json& j) {
  expect_format(j, kMomentsFormat);
  MomentSequence seq;
  seq.dim = dim_from_json(j);
  seq.mode = mode_from_json(j);
  const auto& dir = member(j, "direction");
  Vec z_re = vec_from_json(member(dir, "z_re"));
  if (dir.contains("z_im")) {
    seq.direction = Direction::complex(std::move(z_re), vec_from_json(dir.at("z_im")));
  } else {
    seq.direction = Direction::real(std::move(z_re));
  }
  if (seq.direction.dim() != static_cast<std::size_t>(seq.dim)) throw PreconditionError("direction dimension differs from dim");
  validate_direction(seq.direction);
  seq.mode.complex_enabled = seq.direction.is_complex();
  for (const auto& m : member(j, "moments")) {
    if (m.is_object()) {
      seq.moments.emplace_back(rational_from_json(member(m, "re")), rational_from_json(member(m, "im")));
    } else {
      seq.moments.emplace_back(rational_from_json(m));
    }
  }
  return seq;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json diagnostics_to_json(const RecoveryDiagnostics& d) {
  Json out{{"method", to_string(d.method)},
           {"hankel_size", d.rank.size},
           {"rank", d.rank.rank}};
  if (!d.rank.singular_values.empty()) {
    out["singular_values"] = d.rank.singular_values;
    out["rank_threshold"] = d.rank.threshold;
  }
  if (d.method == RecoveryMethod::Prony) out["kernel_residual"] = d.rank.kernel_residual;
  if (d.pade_condition) out["pade_condition"] = *d.pade_condition;
  if (d.method == RecoveryMethod::Pade) {
    out["pade_degree"] = d.pade_degree;
    out["zero_projections"] = d.zero_projections;
  }
  out["root_residual"] = d.root_residual;
  out["scale_exponent"] = d.scale_exponent;
  return out;
}

Json report_to_json(const ReconstructionReport& report, const std::optional<VertexSetDistance>& distance) {
  Json attempts = Json::array();
  for (const auto& a : report.attempts) {
    Json planes = Json::array();
    for (const auto& p : a.planes) {
      planes.push_back(Json{{"direction", direction_to_json(p.direction)},
                            {"estimated_N", p.estimated_N},
                            {"diagnostics", diagnostics_to_json(p.diagnostics)}});
    }
    Json entry{{"frame_seed", a.frame_seed}, {"frame", frame_to_json(a.frame)}, {"planes", planes}};
    entry["error"] = a.error ? Json(*a.error) : Json(nullptr);
    attempts.push_back(std::move(entry));
  }
  Json approx = Json::array();
  for (const auto& v : report.vertices) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.get_d());
    approx.push_back(std::move(row));
  }
  Json out{{"generated_at", utc_timestamp()},
           {"format", kReportFormat},
           {"dim", report.dim},
           {"mode", report.mode.to_string()},
           {"seed", report.seed},
           {"n_max", report.n_max},
           {"method", to_string(report.method)},
           {"success", !report.vertices.empty()},
           {"estimated_N", report.estimated_N},
           {"moments_used", report.moments_used},
           {"vertices", vertices_to_json(report.vertices)},
           {"vertices_approx", approx},
           {"attempts", attempts}};
  if (distance) {
    out["distance"] = Json{{"value", distance->value},
                           {"squared", format_rational(distance->squared)},
                           {"assignment", distance->assignment}};
  }
  return out;
}

LoadedReport report_from_json(const Json& j) {
  expect_format(j, kReportFormat);
  LoadedReport r;
  r.dim = dim_from_json(j);
  r.mode = mode_from_json(j);
  r.vertices = vertices_from_json(j, r.dim);
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << j.dump(2) << '\n';
}

OffMesh off_from_polytope(const Polytope& p) {
  if (p.dim != 3) throw PreconditionError("export is 3D only");
  OffMesh mesh;
  mesh.vertices = p.vertices;
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    std::vector<int> on;
    for (std::size_t v = 0; v < p.size(); ++v) {
      const auto& vf = p.vertex_facets[v];
      if (std::binary_search(vf.begin(), vf.end(), static_cast<int>(f))) on.push_back(static_cast<int>(v));
    }
    if (on.size() < 3) throw GeometryError("facet " + std::to_string(f) + " has fewer than 3 vertices");
    order_face(on, p.vertices, p.facets[f].normal);
    mesh.faces.push_back(std::move(on));
  }
  return mesh;
}

OffMesh off_from_points(const std::vector<Vec>& points) {
  const std::size_t n = points.size();
  for (const auto& v : points) {
    if (v.size() != 3) throw PreconditionError("export is 3D only");
  }
  OffMesh mesh;
  mesh.vertices = points;
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec normal = cross(points[j] - points[i], points[k] - points[i]);
        if (std::all_of(normal.begin(), normal.end(), [](const Rational& x) { return sgn(x) == 0; })) continue;
        bool pos = false;
        bool neg = false;
        std::vector<int> on;
        for (std::size_t q = 0; q < n; ++q) {
          const int s = sgn(dot(normal, points[q] - points[i]));
          if (s > 0) pos = true;
          if (s < 0) neg = true;
          if (s == 0) on.push_back(static_cast<int>(q));
        }
        if (pos && neg) continue;
        if (!seen.insert(on).second) continue;
        if (pos) {
          for (auto& x : normal) x = -x;
        }
        order_face(on, points, normal);
        mesh.faces.push_back(std::move(on));
      }
    }
  }
  if (mesh.faces.size() < 4) throw GeometryError("points do not span 3D");
  return mesh;
}

void write_off(std::ostream& out, const OffMesh& mesh) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  for (const auto& v : mesh.vertices) {
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << to_decimal(v[k]);
    out << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << f.size();
    for (int i : f) out << ' ' << i;
    out << '\n';
  }
}

}  // namespace polyrecon
