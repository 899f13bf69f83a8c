// polyrecon: generate polytopes, simulate moments, reconstruct, sweep,
// export meshes and verify the forward model.
//
// Exit codes: 0 ok, 1 other error, 2 generation failure, 3 degenerate
// direction, 4 reconstruction failure, 64 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "polyrecon/experiment.hpp"
#include "polyrecon/fixtures.hpp"
#include "polyrecon/io.hpp"
#include "polyrecon/matching.hpp"
#include "polyrecon/metrics.hpp"

using namespace polyrecon;

namespace {

constexpr int kExitError = 1;
constexpr int kExitGeneration = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitReconstruction = 4;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Vec parse_vector(const std::string& text) {
  Vec out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw UsageError("empty vector");
  return out;
}

// "15,20,25" or "15:70:5" (inclusive range with step).
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    try {
      if (parts.size() == 1) {
        out.push_back(std::stoi(parts[0]));
      } else if (parts.size() == 3) {
        const int lo = std::stoi(parts[0]);
        const int hi = std::stoi(parts[1]);
        const int step = std::stoi(parts[2]);
        if (step <= 0 || hi < lo) throw UsageError("bad range " + item);
        for (int b = lo; b <= hi; b += step) out.push_back(b);
      } else {
        throw UsageError("bad list item " + item);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad list item " + item);
    }
  }
  return out;
}

struct ModeOptions {
  std::string mode;
  std::optional<int> bits;

  void add(CLI::App& app) {
    app.add_option("--mode", mode, "rational | float (default: float when --bits is given)")
        ->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--bits", bits, "mantissa bits in float mode")->check(CLI::Range(ScalarMode::kMinBits, 1 << 20));
  }

  ScalarMode resolve() const {
    const std::string m = mode.empty() ? (bits ? "float" : "rational") : mode;
    if (m == "rational") {
      if (bits) throw UsageError("--bits only applies to --mode float");
      return ScalarMode::exact();
    }
    if (!bits) throw UsageError("--mode float needs --bits");
    return ScalarMode::floating(*bits);
  }
};

struct PolytopeInput {
  std::string file;
  std::string fixture_name;

  void add(CLI::App& app) {
    auto* f = app.add_option("--polytope", file, "polytope file");
    auto* x = app.add_option("--fixture", fixture_name, "built-in fixture: hex8, unit-square, unit-cube, simplex3, d3n20");
    f->excludes(x);
  }
  bool given() const { return !file.empty() || !fixture_name.empty(); }
  Polytope load() const {
    if (!fixture_name.empty()) return fixture(fixture_name);
    if (file.empty()) throw UsageError("need --polytope or --fixture");
    return polytope_from_json(read_json_file(file));
  }
};

void emit_json(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

// Human text goes to stdout unless stdout carries the machine output.
std::ostream& human(const std::string& output) { return output.empty() || output == "-" ? std::cerr : std::cout; }

std::string format_point(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(6);
  out << '(';
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << v[k];
  return out.str() + ')';
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  int dim = 0;
  int facets = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> vertices;
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  Polytope p;
  try {
    p = a.vertices ? random_polytope_with_vertices(a.dim, a.facets, *a.vertices, a.seed)
                   : random_simple_polytope(a.dim, a.facets, a.seed);
  } catch (const Error& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kExitGeneration;
  }
  emit_json(a.output, polytope_to_json(p));
  human(a.output) << "generated " << p.dim << "-polytope: N=" << p.size() << " vertices, " << p.facets.size()
                  << " facets, simple=" << (check_simple(p) ? "yes" : "no") << '\n';
  return 0;
}

// ----------------------------------------------------------------- moments

struct MomentsArgs {
  PolytopeInput input;
  ModeOptions mode;
  std::string z;
  std::string zim;
  std::size_t count = 0;
  std::string output;
};

int cmd_moments(const MomentsArgs& a) {
  if (a.count == 0) throw UsageError("--count must be at least 1");
  const ScalarMode mode = a.mode.resolve();
  const Polytope p = a.input.load();
  const Direction z = a.zim.empty() ? Direction::real(parse_vector(a.z)) : Direction::complex(parse_vector(a.z), parse_vector(a.zim));
  if (z.dim() != static_cast<std::size_t>(p.dim)) throw UsageError("direction has the wrong dimension");
  MomentSequence seq;
  try {
    seq = moment_provider(p, z, a.count, mode);
  } catch (const DegenerateDirection& e) {
    std::cerr << e.what() << "; choose another direction (e.g. perturb one entry)\n";
    return kExitDegenerate;
  }
  emit_json(a.output, moments_to_json(seq));
  human(a.output) << a.count << " moments of a " << p.dim << "-polytope along " << z.to_string() << " in "
                  << seq.mode.to_string() << " mode\n";
  return 0;
}

// ------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  PolytopeInput input;
  std::vector<std::string> moment_files;
  std::string truth;
  ModeOptions mode;
  std::optional<std::size_t> nmax;
  std::uint64_t seed = 1;
  std::string method = "pade";
  std::string output;
};

constexpr double kDistortionWarning = 1e-3;

int cmd_reconstruct(const ReconstructArgs& a) {
  const RecoveryMethod method = parse_method(a.method);
  std::optional<Polytope> truth;
  ReconstructionReport report;
  bool failed = false;
  std::string failure;
  if (!a.moment_files.empty()) {
    if (a.input.given()) throw UsageError("give either moment files or a polytope, not both");
    if (a.mode.bits || !a.mode.mode.empty()) throw UsageError("moment files carry their own mode");
    if (!a.nmax) throw UsageError("--nmax is required with moment files");
    std::vector<MomentSequence> seqs;
    for (const auto& f : a.moment_files) seqs.push_back(moments_from_json(read_json_file(f)));
    DirectionFrame frame;
    frame.z_re = seqs.front().direction.z_re;
    for (const auto& s : seqs) {
      if (!s.direction.is_complex() || s.direction.z_re != frame.z_re) {
        throw UsageError("moment files must share z_re and have complex directions");
      }
      frame.z_others.push_back(*s.direction.z_im);
    }
    const ScalarMode mode = seqs.front().mode;
    if (!a.truth.empty()) truth = polytope_from_json(read_json_file(a.truth));
    RecordedMomentSource source(std::move(seqs));
    try {
      report = reconstruct_with_frame(source, frame, *a.nmax, mode, method);
    } catch (const ReconstructionFailure& e) {
      report = e.report();
      failed = true;
      failure = e.what();
    }
  } else {
    truth = a.input.load();
    const ScalarMode mode = a.mode.resolve();
    const std::size_t nmax = a.nmax.value_or(truth->size());
    PolytopeMomentSource source(*truth);
    try {
      report = reconstruct(source, truth->dim, nmax, mode, a.seed, method);
    } catch (const ReconstructionFailure& e) {
      report = e.report();
      failed = true;
      failure = e.what();
    }
  }
  std::optional<VertexSetDistance> distance;
  if (!failed && truth) {
    if (truth->size() != report.vertices.size()) {
      failed = true;
      failure = "estimated N=" + std::to_string(report.vertices.size()) + " but the polytope has " +
                std::to_string(truth->size()) + " vertices";
    } else {
      distance = vertex_set_distance(truth->vertices, report.vertices);
    }
  }
  if (!a.output.empty()) write_json_file(a.output, report_to_json(report, distance));
  if (failed) {
    std::cerr << failure << '\n';
    return kExitReconstruction;
  }
  std::cout << "recovered N=" << report.estimated_N << " vertices in " << report.mode.to_string() << " mode after "
            << report.attempts.size() << " frame(s), " << report.moments_used << " moments\n";
  for (const auto& v : report.vertices) {
    std::vector<double> approx;
    for (const auto& x : v) approx.push_back(x.get_d());
    std::cout << "  " << format_point(approx) << '\n';
  }
  if (distance) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", distance->value);
    std::cout << "vertex-set distance to the ground truth: " << (distance->is_zero() ? "0 (exact)" : buf) << '\n';
    if (distance->value > kDistortionWarning) {
      std::cout << "warning: distorted recovery, distance exceeds " << kDistortionWarning << "; try more bits\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  int dim = 3;
  std::string n_values;
  std::string bits;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string method = "pade";
  unsigned jobs = 0;
  std::string output;
};

int cmd_sweep(const SweepArgs& a) {
  SweepConfig config;
  config.dim = a.dim;
  for (int n : parse_int_list(a.n_values)) {
    if (n < 1) throw UsageError("N must be positive");
    config.n_values.push_back(static_cast<std::size_t>(n));
  }
  config.bits = parse_int_list(a.bits);
  config.trials = a.trials;
  config.seed = a.seed;
  config.method = parse_method(a.method);
  config.jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  try {
    validate_sweep(config);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const auto result = run_sweep(config);
  if (!a.output.empty()) write_json_file(a.output, sweep_to_json(result));
  std::cout << sweep_summary(result);
  return 0;
}

// ------------------------------------------------------------------ export

struct ExportArgs {
  PolytopeInput input;
  std::string file;
  std::string output;
};

int cmd_export(const ExportArgs& a) {
  OffMesh mesh;
  if (!a.file.empty()) {
    if (a.input.given()) throw UsageError("give either an input file or --polytope/--fixture");
    const Json j = read_json_file(a.file);
    const std::string format = j.value("format", "");
    if (format == kReportFormat) {
      const auto r = report_from_json(j);
      if (r.dim != 3) throw PreconditionError("export is 3D only");
      if (r.mode.is_exact()) {
        mesh = off_from_points(r.vertices);
      } else {
        mesh.vertices = r.vertices;
        std::cerr << "warning: point cloud only (float-mode vertices carry no exact hull)\n";
      }
    } else {
      mesh = off_from_polytope(polytope_from_json(j));
    }
  } else {
    mesh = off_from_polytope(a.input.load());
  }
  if (a.output.empty() || a.output == "-") {
    write_off(std::cout, mesh);
  } else {
    std::ofstream out(a.output);
    if (!out) throw PreconditionError("cannot write " + a.output);
    write_off(out, mesh);
    std::cout << "wrote " << mesh.vertices.size() << " vertices and " << mesh.faces.size() << " faces to " << a.output
              << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  PolytopeInput input;
  int directions = 8;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& a) {
  const Polytope p = a.input.given() ? a.input.load() : hexahedron8_fixture();
  VerifyOptions options;
  options.directions = a.directions;
  options.seed = a.seed;
  const auto r = verify_polytope(p, options);
  std::cout << "directions: " << r.directions_checked << "\nvertex-sum identities (j < d): " << r.identity_checks
            << " checks\nBrion vs triangulation oracle (j <= " << options.max_j << "): " << r.oracle_checks
            << " checks\ncomplex moments vs oracle (j <= " << options.max_j_complex << "): " << r.complex_oracle_checks
            << " checks\n";
  for (const auto& f : r.failures) std::cout << "FAIL " << f << '\n';
  std::cout << (r.ok() ? "all checks passed\n" : "verification failed\n");
  return r.ok() ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct convex polytopes from their axial moments"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "random simple polytope from integer halfspaces");
  g->add_option("--dim", gen.dim, "dimension")->required()->check(CLI::Range(2, 16));
  g->add_option("--facets", gen.facets, "number of halfspaces")->required()->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--vertices", gen.vertices, "retry seeds until the polytope has this many vertices");
  g->add_option("-o,--output", gen.output, "output file (default: stdout)");

  MomentsArgs mom;
  auto* m = app.add_subcommand("moments", "axial moments of a polytope along a direction");
  mom.input.add(*m);
  mom.mode.add(*m);
  m->add_option("--z", mom.z, "real part of the direction, e.g. 2,3,4")->required();
  m->add_option("--zim", mom.zim, "imaginary part of the direction, e.g. -5,2,-8");
  m->add_option("--count", mom.count, "number of moments mu_0 .. mu_{count-1}")->required();
  m->add_option("-o,--output", mom.output, "output file (default: stdout)");

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "recover vertices from moments");
  rec.input.add(*r);
  rec.mode.add(*r);
  r->add_option("--moments", rec.moment_files, "recorded complex moment files sharing z_re (d-1 of them)");
  r->add_option("--truth", rec.truth, "ground-truth polytope file for moment-file input");
  r->add_option("--nmax", rec.nmax, "upper bound on the vertex count (default: true N for a polytope input)");
  r->add_option("--seed", rec.seed, "first direction-frame seed");
  r->add_option("--method", rec.method, "pade | prony")->check(CLI::IsMember({"pade", "prony"}));
  r->add_option("-o,--output", rec.output, "report file");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "error versus precision over random polytopes");
  s->add_option("--dim", sw.dim, "dimension (2 or 3)");
  s->add_option("--n", sw.n_values, "vertex counts, e.g. 4,8,12,20")->required();
  s->add_option("--bits", sw.bits, "bit counts, e.g. 15,20,25 or 15:70:5")->required();
  s->add_option("--trials", sw.trials, "trials per cell")->check(CLI::PositiveNumber);
  s->add_option("--seed", sw.seed, "base seed");
  s->add_option("--method", sw.method, "pade | prony")->check(CLI::IsMember({"pade", "prony"}));
  s->add_option("--jobs", sw.jobs, "worker threads (default: hardware concurrency)");
  s->add_option("-o,--output", sw.output, "sweep table file");

  ExportArgs ex;
  auto* e = app.add_subcommand("export", "write an OFF mesh");
  ex.input.add(*e);
  e->add_option("input", ex.file, "polytope or report file");
  e->add_option("-o,--output", ex.output, "OFF file (default: stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "check the vertex-sum identities and moments against the oracle");
  ver.input.add(*v);
  v->add_option("--directions", ver.directions, "random directions to test")->check(CLI::PositiveNumber);
  v->add_option("--seed", ver.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ex_) {
    return app.exit(ex_);
  } catch (const CLI::ParseError& ex_) {
    app.exit(ex_);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*m) return cmd_moments(mom);
    if (*r) return cmd_reconstruct(rec);
    if (*s) return cmd_sweep(sw);
    if (*e) return cmd_export(ex);
    if (*v) return cmd_verify(ver);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateDirection& err) {
    std::cerr << err.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
