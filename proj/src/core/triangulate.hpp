#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vertex_enum.hpp"

namespace polyprof {

// Interior-disjoint simplicial cover of a polytope. Simplices index into the
// generating VertexSet; each is sorted ascending and the list is sorted
// lexicographically so equal inputs give identical complexes.
struct SimplicialComplex {
  std::vector<std::vector<int>> simplices;  // each of size d+1
  std::vector<double> volumes;

  int count() const { return static_cast<int>(simplices.size()); }
};

// Delaunay triangulation of the convex hull of v, computed as the lower
// convex hull of the points lifted onto the paraboloid. Co-spherical inputs
// (cubes and friends) are disambiguated by a deterministic perturbation of
// the lift heights keyed by vertex index, which never moves the points
// themselves, so volumes are unaffected. Raises DegenerateHull when the
// points do not span dimension d.
SimplicialComplex delaunay_triangulate(const VertexSet& v);

// Sum of simplex volumes (each |det of edge matrix| / d!).
double volume_of(const SimplicialComplex& s);

// Volume of one simplex given by point rows.
double simplex_volume(const Eigen::MatrixXd& points,
                      const std::vector<int>& simplex);

}  // namespace polyprof
