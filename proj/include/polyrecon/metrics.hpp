#pragma once

#include <vector>

#include "polyrecon/geometry.hpp"

namespace polyrecon {

// min over bijections pi of max_i |a_i - b_pi(i)|.
struct VertexSetDistance {
  Rational squared;             // exact square of the distance
  double value = 0;             // sqrt(squared)
  std::vector<int> assignment;  // a_i is paired with b_assignment[i]

  bool is_zero() const { return sgn(squared) == 0; }
};

// Bottleneck assignment: the smallest squared distance threshold admitting a
// perfect matching, found by bisection over the sorted pairwise distances with
// augmenting-path matching. Exact on rational inputs. Throws
// PreconditionError when the sets differ in size.
VertexSetDistance vertex_set_distance(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace polyrecon
