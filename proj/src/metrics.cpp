#include "polyrecon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace polyrecon {

namespace {

bool augment(std::size_t u, const std::vector<std::vector<bool>>& allowed, std::vector<int>& match_b,
             std::vector<bool>& seen) {
  for (std::size_t v = 0; v < allowed.size(); ++v) {
    if (!allowed[u][v] || seen[v]) continue;
    seen[v] = true;
    if (match_b[v] < 0 || augment(static_cast<std::size_t>(match_b[v]), allowed, match_b, seen)) {
      match_b[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

// Perfect matching using only pairs with squared distance <= limit.
std::optional<std::vector<int>> perfect_matching(const std::vector<std::vector<Rational>>& dist, const Rational& limit) {
  const std::size_t n = dist.size();
  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) allowed[i][j] = dist[i][j] <= limit;
  }
  std::vector<int> match_b(n, -1);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<bool> seen(n, false);
    if (!augment(u, allowed, match_b, seen)) return std::nullopt;
  }
  std::vector<int> assignment(n);
  for (std::size_t v = 0; v < n; ++v) assignment[static_cast<std::size_t>(match_b[v])] = static_cast<int>(v);
  return assignment;
}

}  // namespace

VertexSetDistance vertex_set_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("vertex sets differ in size: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  VertexSetDistance out;
  const std::size_t n = a.size();
  if (n == 0) return out;
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  std::vector<Rational> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i].size() != b[j].size()) throw PreconditionError("vertex dimensions differ");
      const Vec diff = a[i] - b[j];
      dist[i][j] = dot(diff, diff);
      values.push_back(dist[i][j]);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(dist, values[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.squared = values[lo];
  out.assignment = *perfect_matching(dist, out.squared);
  out.value = std::sqrt(out.squared.get_d());
  return out;
}

}  // namespace polyrecon
