#pragma once

#include <Eigen/Dense>

#include "halfspaces.hpp"

namespace polyprof {

// Extreme points of a bounded full-dimensional polytope, rows sorted
// lexicographically and deduplicated.
struct VertexSet {
  Eigen::MatrixXd points;  // M x d
  double dedup_tol = kDedupTol;

  int count() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

// All vertices of {x : h holds}. Raises Degenerate for empty or
// lower-dimensional systems and Unbounded when the set is not bounded
// (callers normally intersect with a BoundingBox first).
//
// Small systems are enumerated over rank-d constraint subsets directly;
// larger ones are first reduced to their non-redundant rows, which keeps the
// subset count proportional to the (small) facet count.
VertexSet enumerate_vertices(const HalfspaceSystem& h);

// Fast path for systems already known to be bounded and full-dimensional,
// restricted to the given facet rows.
VertexSet enumerate_vertices_trusted(const HalfspaceSystem& h,
                                     const std::vector<int>& facet_rows);

}  // namespace polyprof
