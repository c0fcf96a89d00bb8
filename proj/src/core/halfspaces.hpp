#pragma once

#include <Eigen/Dense>
#include <vector>

#include "errors.hpp"

namespace polyprof {

// Global numeric policy: plain doubles with one activity tolerance and one
// vertex dedup tolerance. Exact arithmetic is out of scope.
constexpr double kActivityTol = 1e-9;
constexpr double kDedupTol = 1e-7;

// H-representation {x : normals.row(k) . x + offsets(k) <= 0}.
struct HalfspaceSystem {
  Eigen::MatrixXd normals;  // K x d
  Eigen::VectorXd offsets;  // K
  double tol = kActivityTol;

  int dim() const { return static_cast<int>(normals.cols()); }
  int size() const { return static_cast<int>(normals.rows()); }

  // normals * x + offsets; feasible iff everything <= tol
  Eigen::VectorXd margins(const Eigen::VectorXd& x) const {
    return normals * x + offsets;
  }

  bool contains(const Eigen::VectorXd& x, double slack) const {
    return margins(x).maxCoeff() <= slack;
  }

  // all entries finite, shapes consistent, tol positive
  void validate() const;

  HalfspaceSystem appended(const HalfspaceSystem& other) const;
};

// The hypercube [-half_width, half_width]^dim used as the outer clip for all
// region geometry; expands to rows x_i - B <= 0 followed by -x_i - B <= 0.
struct BoundingBox {
  int dim = 0;
  double half_width = 1.0;

  HalfspaceSystem halfspaces() const;
  bool contains(const Eigen::VectorXd& x) const {
    return x.lpNorm<Eigen::Infinity>() <= half_width;
  }
};

struct ChebyshevCenter {
  Eigen::VectorXd point;
  double radius = 0.0;
};

// Center and radius of the largest inscribed ball. Raises Infeasible when the
// system is empty and Unbounded when the inradius grows without bound.
ChebyshevCenter chebyshev_center(const HalfspaceSystem& h);

// radius > tol; false for empty or measure-zero systems
bool is_full_dimensional(const HalfspaceSystem& h);

// Indices whose removal strictly enlarges the feasible set; these are exactly
// the (d-1)-dimensional faces. Raises Degenerate unless h is full-dimensional.
std::vector<int> nonredundant_indices(const HalfspaceSystem& h);

// Variant reusing a known strictly interior point (skips the Chebyshev LP).
std::vector<int> nonredundant_indices(const HalfspaceSystem& h,
                                      const Eigen::VectorXd& interior);

}  // namespace polyprof
