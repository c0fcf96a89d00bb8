#pragma once

#include <Eigen/Dense>

#include "errors.hpp"

namespace polyprof {

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpOptions {
  double tol = 1e-9;              // feasibility / activity tolerance (distances)
  double artificial_bound = 1e9;  // |x_j| <= this, appended internally
  int max_iterations = 200000;
};

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// Maximize c.x subject to A x <= b, starting from a feasible point x0.
// Rows are normalized internally; artificial bounds |x_j| <= artificial_bound
// keep the feasible set pointed. An optimum that leans on an artificial bound
// with a positive multiplier is reported as Unbounded.
LpResult lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c, const Eigen::VectorXd& x0,
                     const LpOptions& opts = {});

struct ChebyshevResult {
  LpStatus status = LpStatus::Optimal;
  Eigen::VectorXd center;
  double radius = 0.0;  // negative: |radius| is the infeasibility depth
};

// Largest inscribed ball of {x : A x <= b} via the lifted LP
//   max r  s.t.  a_i.x + ||a_i|| r <= b_i.
// The lifted LP is always feasible, so this never fails outright; radius < 0
// signals an infeasible system. Unbounded radius gives status Unbounded.
ChebyshevResult chebyshev_ball(const Eigen::MatrixXd& A,
                               const Eigen::VectorXd& b,
                               const LpOptions& opts = {});

}  // namespace polyprof
