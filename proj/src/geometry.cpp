#include "polyrecon/geometry.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "polyrecon/linalg.hpp"

namespace polyrecon {

Rational dot(const Vec& a, const Vec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool Polytope::adjacent(int i, int j) const {
  const auto& row = neighbors.at(static_cast<std::size_t>(i));
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<std::vector<bool>> Polytope::adjacency_matrix() const {
  std::vector<std::vector<bool>> out(size(), std::vector<bool>(size(), false));
  for (std::size_t i = 0; i < size(); ++i) {
    for (int j : neighbors[i]) out[i][static_cast<std::size_t>(j)] = true;
  }
  return out;
}

namespace {

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::size_t shared_count(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

bool edge_graph_connected(const std::vector<std::vector<int>>& neighbors) {
  if (neighbors.empty()) return false;
  std::vector<bool> seen(neighbors.size(), false);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    for (int u : neighbors[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++count;
        todo.push(u);
      }
    }
  }
  return count == neighbors.size();
}

Integer isqrt_ceil(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r < n) ++r;
  return r;
}

}  // namespace

Polytope intersect_halfspaces(std::span<const Halfspace> halfspaces) {
  if (halfspaces.empty()) throw PreconditionError("no halfspaces given");
  const int d = static_cast<int>(halfspaces.front().normal.size());
  if (d < 2) throw PreconditionError("dimension must be at least 2");
  if (static_cast<int>(halfspaces.size()) < d + 1) throw PreconditionError("need at least d+1 halfspaces");
  for (const auto& h : halfspaces) {
    if (static_cast<int>(h.normal.size()) != d) throw PreconditionError("halfspace dimension mismatch");
    if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return sgn(x) == 0; })) {
      throw PreconditionError("halfspace with zero normal");
    }
  }
  const int n = static_cast<int>(halfspaces.size());

  std::map<Vec, std::vector<int>> found;  // vertex -> tight constraints
  for_each_subset(n, d, [&](const std::vector<int>& subset) {
    Matrix<Rational> a(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    std::vector<Rational> b(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
      const auto& h = halfspaces[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])];
      for (int c = 0; c < d; ++c) a(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = h.normal[static_cast<std::size_t>(c)];
      b[static_cast<std::size_t>(r)] = h.offset;
    }
    auto x = solve_full_pivot(std::move(a), std::move(b));
    if (!x || found.count(*x)) return;
    std::vector<int> tight;
    for (int i = 0; i < n; ++i) {
      const Rational lhs = dot(halfspaces[static_cast<std::size_t>(i)].normal, *x);
      const int cmp_result = cmp(lhs, halfspaces[static_cast<std::size_t>(i)].offset);
      if (cmp_result > 0) return;
      if (cmp_result == 0) tight.push_back(i);
    }
    found.emplace(std::move(*x), std::move(tight));
  });
  if (found.empty()) throw GeometryError("not a bounded polytope");
  for (const auto& [v, tight] : found) {
    if (static_cast<int>(tight.size()) > d) throw GeometryError("not simple");
  }

  // Keep only halfspaces that support at least one vertex.
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  for (const auto& [v, tight] : found) {
    for (int i : tight) remap[static_cast<std::size_t>(i)] = 0;
  }
  Polytope p;
  p.dim = d;
  for (int i = 0; i < n; ++i) {
    if (remap[static_cast<std::size_t>(i)] == 0) {
      remap[static_cast<std::size_t>(i)] = static_cast<int>(p.facets.size());
      p.facets.push_back(halfspaces[static_cast<std::size_t>(i)]);
    }
  }
  for (auto& [v, tight] : found) {
    p.vertices.push_back(v);
    std::vector<int> facets;
    for (int i : tight) facets.push_back(remap[static_cast<std::size_t>(i)]);
    std::sort(facets.begin(), facets.end());
    p.vertex_facets.push_back(std::move(facets));
  }
  p.neighbors.assign(p.size(), {});
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (shared_count(p.vertex_facets[i], p.vertex_facets[j]) == static_cast<std::size_t>(d - 1)) {
        p.neighbors[i].push_back(static_cast<int>(j));
        p.neighbors[j].push_back(static_cast<int>(i));
      }
    }
  }
  // A pointed unbounded polyhedron always has a vertex on an unbounded edge,
  // which shows up as a missing neighbor.
  for (const auto& row : p.neighbors) {
    if (static_cast<int>(row.size()) != d) throw GeometryError("not a bounded polytope");
  }
  if (static_cast<int>(p.size()) < d + 1) throw GeometryError("not a bounded polytope");
  validate_polytope(p);
  return p;
}

Polytope random_simple_polytope(int dim, int n_facets, std::uint64_t seed, int retry_budget) {
  if (dim < 2) throw PreconditionError("dimension must be at least 2");
  if (n_facets < dim + 1) throw PreconditionError("need n_facets >= dim + 1");
  constexpr long kCoefficientRange = 20;
  constexpr long kRadius = 10;
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() { return static_cast<long>(rng() % (2 * kCoefficientRange + 1)) - kCoefficientRange; };
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    std::vector<Halfspace> hs;
    while (static_cast<int>(hs.size()) < n_facets) {
      Halfspace h;
      Integer sq(0);
      for (int k = 0; k < dim; ++k) {
        const long c = draw();
        h.normal.emplace_back(c);
        sq += c * c;
      }
      if (sq == 0) continue;
      // Smallest integer offset putting the plane at distance >= kRadius.
      h.offset = Rational(isqrt_ceil(sq * kRadius * kRadius));
      hs.push_back(std::move(h));
    }
    try {
      Polytope p = intersect_halfspaces(hs);
      if (check_simple(p)) return p;
    } catch (const GeometryError&) {
      // resample
    }
  }
  throw GeometryError("generation failed");
}

TangentCone tangent_cone(const Polytope& polytope, int vertex_index) {
  if (vertex_index < 0 || static_cast<std::size_t>(vertex_index) >= polytope.size()) {
    throw PreconditionError("vertex index out of range");
  }
  const auto& nb = polytope.neighbors[static_cast<std::size_t>(vertex_index)];
  if (static_cast<int>(nb.size()) != polytope.dim) {
    throw GeometryError("non-simple vertex " + std::to_string(vertex_index));
  }
  TangentCone cone;
  cone.apex = polytope.vertices[static_cast<std::size_t>(vertex_index)];
  const auto d = static_cast<std::size_t>(polytope.dim);
  Matrix<Rational> m(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    cone.edges.push_back(polytope.vertices[static_cast<std::size_t>(nb[k])] - cone.apex);
    for (std::size_t c = 0; c < d; ++c) m(c, k) = cone.edges.back()[c];
  }
  cone.det_abs = abs(determinant(std::move(m)));
  return cone;
}

bool check_simple(const Polytope& polytope) {
  for (std::size_t i = 0; i < polytope.size(); ++i) {
    if (static_cast<int>(polytope.neighbors[i].size()) != polytope.dim) return false;
    if (sgn(tangent_cone(polytope, static_cast<int>(i)).det_abs) == 0) return false;
  }
  return true;
}

namespace {

// Primitive integer normal orthogonal to the given d-1 vectors (generalized
// cross product), or empty when they are dependent.
Vec orthogonal_complement(const std::vector<Vec>& rows, int d) {
  Vec normal(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    Matrix<Rational> minor(static_cast<std::size_t>(d - 1), static_cast<std::size_t>(d - 1));
    for (int r = 0; r < d - 1; ++r) {
      int cc = 0;
      for (int c = 0; c < d; ++c) {
        if (c == k) continue;
        minor(static_cast<std::size_t>(r), static_cast<std::size_t>(cc++)) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      }
    }
    Rational det = determinant(std::move(minor));
    normal[static_cast<std::size_t>(k)] = (k % 2 == 0) ? det : Rational(-det);
  }
  // Scale to a primitive integer vector.
  Integer lcm_den(1);
  for (const auto& x : normal) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
  Integer g(0);
  for (auto& x : normal) {
    x *= lcm_den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g == 0) return {};
  for (auto& x : normal) x /= g;
  return normal;
}

}  // namespace

Polytope polytope_from_vertices_and_edges(int dim, std::vector<Vec> vertices, std::vector<std::vector<int>> neighbors) {
  if (dim < 2) throw PreconditionError("dimension must be at least 2");
  if (neighbors.size() != vertices.size()) throw GeometryError("adjacency size does not match vertex count");
  for (auto& row : neighbors) std::sort(row.begin(), row.end());
  Polytope p;
  p.dim = dim;
  p.vertices = std::move(vertices);
  p.neighbors = std::move(neighbors);
  for (const auto& v : p.vertices) {
    if (static_cast<int>(v.size()) != dim) throw GeometryError("vertex dimension mismatch");
  }

  std::map<std::pair<Vec, Rational>, int> index;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& nb = p.neighbors[i];
    if (static_cast<int>(nb.size()) != dim) throw GeometryError("non-simple vertex " + std::to_string(i));
    std::vector<Vec> edges;
    for (int u : nb) edges.push_back(p.vertices[static_cast<std::size_t>(u)] - p.vertices[i]);
    for (int skip = 0; skip < dim; ++skip) {
      std::vector<Vec> rows;
      for (int k = 0; k < dim; ++k) {
        if (k != skip) rows.push_back(edges[static_cast<std::size_t>(k)]);
      }
      Vec normal = orthogonal_complement(rows, dim);
      if (normal.empty()) throw GeometryError("dependent edges at vertex " + std::to_string(i));
      const int side = sgn(dot(normal, edges[static_cast<std::size_t>(skip)]));
      if (side == 0) throw GeometryError("dependent edges at vertex " + std::to_string(i));
      if (side > 0) {
        for (auto& x : normal) x = -x;
      }
      Rational offset = dot(normal, p.vertices[i]);
      auto key = std::make_pair(std::move(normal), std::move(offset));
      if (!index.count(key)) {
        index.emplace(key, static_cast<int>(p.facets.size()));
        p.facets.push_back(Halfspace{key.first, key.second});
      }
    }
  }
  p.vertex_facets.assign(p.size(), {});
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
      const int c = cmp(dot(p.facets[f].normal, p.vertices[i]), p.facets[f].offset);
      if (c > 0) throw GeometryError("vertex " + std::to_string(i) + " violates a facet: not convex");
      if (c == 0) p.vertex_facets[i].push_back(static_cast<int>(f));
    }
  }
  validate_polytope(p);
  return p;
}

void validate_polytope(const Polytope& p) {
  const int d = p.dim;
  if (d < 2) throw GeometryError("dimension must be at least 2");
  if (static_cast<int>(p.size()) < d + 1) throw GeometryError("fewer than d+1 vertices");
  if (p.neighbors.size() != p.size() || p.vertex_facets.size() != p.size()) {
    throw GeometryError("incidence tables do not match vertex count");
  }
  std::set<Vec> distinct(p.vertices.begin(), p.vertices.end());
  if (distinct.size() != p.size()) throw GeometryError("repeated vertex");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (static_cast<int>(p.vertices[i].size()) != d) throw GeometryError("vertex dimension mismatch");
    for (const auto& h : p.facets) {
      if (dot(h.normal, p.vertices[i]) > h.offset) throw GeometryError("vertex outside a facet halfspace");
    }
    if (static_cast<int>(p.vertex_facets[i].size()) < d) throw GeometryError("vertex tight on fewer than d facets");
    for (int j : p.neighbors[i]) {
      if (j < 0 || static_cast<std::size_t>(j) >= p.size() || static_cast<std::size_t>(j) == i) {
        throw GeometryError("bad adjacency entry");
      }
      if (!p.adjacent(j, static_cast<int>(i))) throw GeometryError("adjacency is not symmetric");
      if (static_cast<int>(p.vertex_facets[i].size()) == d &&
          static_cast<int>(p.vertex_facets[static_cast<std::size_t>(j)].size()) == d &&
          shared_count(p.vertex_facets[i], p.vertex_facets[static_cast<std::size_t>(j)]) != static_cast<std::size_t>(d - 1)) {
        throw GeometryError("adjacent vertices do not share d-1 facets");
      }
    }
  }
  if (!edge_graph_connected(p.neighbors)) throw GeometryError("edge graph is not connected");
}

}  // namespace polyrecon
