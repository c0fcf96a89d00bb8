#include "halfspaces.hpp"

#include <cmath>

#include "lp.hpp"

namespace polyprof {

void HalfspaceSystem::validate() const {
  if (normals.rows() != offsets.size())
    raise(ErrorCode::DimMismatch, "halfspace system: offsets length mismatch");
  if (!(tol > 0.0))
    raise(ErrorCode::InvalidArgument, "halfspace system: tol must be positive");
  if (!normals.allFinite() || !offsets.allFinite())
    raise(ErrorCode::InvalidArgument, "halfspace system: non-finite entries");
}

HalfspaceSystem HalfspaceSystem::appended(const HalfspaceSystem& other) const {
  if (other.dim() != dim())
    raise(ErrorCode::DimMismatch, "halfspace append: dimension mismatch");
  HalfspaceSystem out;
  out.tol = tol;
  out.normals.resize(size() + other.size(), dim());
  out.offsets.resize(size() + other.size());
  out.normals << normals, other.normals;
  out.offsets << offsets, other.offsets;
  return out;
}

HalfspaceSystem BoundingBox::halfspaces() const {
  if (dim < 1 || !(half_width > 0.0))
    raise(ErrorCode::InvalidArgument, "bounding box: need dim >= 1 and B > 0");
  HalfspaceSystem h;
  h.normals = Eigen::MatrixXd::Zero(2 * dim, dim);
  h.offsets = Eigen::VectorXd::Constant(2 * dim, -half_width);
  for (int i = 0; i < dim; ++i) {
    h.normals(i, i) = 1.0;
    h.normals(dim + i, i) = -1.0;
  }
  return h;
}

namespace {

ChebyshevResult solve_ball(const HalfspaceSystem& h) {
  LpOptions opts;
  opts.tol = h.tol;
  return chebyshev_ball(h.normals, -h.offsets, opts);
}

}  // namespace

ChebyshevCenter chebyshev_center(const HalfspaceSystem& h) {
  h.validate();
  if (h.size() < 1)
    raise(ErrorCode::InvalidArgument, "chebyshev_center: empty system");
  const ChebyshevResult r = solve_ball(h);
  if (r.status == LpStatus::Unbounded)
    raise(ErrorCode::Unbounded, "chebyshev_center: inradius is unbounded");
  if (r.radius < -h.tol || std::isinf(r.radius))
    raise(ErrorCode::Infeasible, "chebyshev_center: system is infeasible");
  return {r.center, r.radius};
}

bool is_full_dimensional(const HalfspaceSystem& h) {
  h.validate();
  if (h.size() == 0) return true;  // whole space
  const ChebyshevResult r = solve_ball(h);
  if (r.status == LpStatus::Unbounded) return true;
  return r.radius > h.tol;
}

std::vector<int> nonredundant_indices(const HalfspaceSystem& h) {
  h.validate();
  const ChebyshevResult r = solve_ball(h);
  if (r.status != LpStatus::Unbounded && !(r.radius > h.tol))
    raise(ErrorCode::Degenerate, "nonredundant_indices: not full-dimensional");
  return nonredundant_indices(h, r.center);
}

std::vector<int> nonredundant_indices(const HalfspaceSystem& h,
                                      const Eigen::VectorXd& interior) {
  h.validate();
  const int k_rows = h.size();

  // Row k is a face iff maximizing a_k.x with row k relaxed by one geometric
  // unit pushes the optimum strictly past the original boundary.
  Eigen::MatrixXd A = h.normals;
  Eigen::VectorXd b = -h.offsets;
  LpOptions opts;
  opts.tol = h.tol;

  std::vector<int> result;
  for (int k = 0; k < k_rows; ++k) {
    const double nrm = h.normals.row(k).norm();
    if (nrm <= 1e-300) continue;  // vacuous row, never a face
    const double saved = b(k);
    b(k) += nrm;  // relax by distance 1
    const LpResult lp = lp_maximize(A, b, h.normals.row(k).transpose(),
                                    interior, opts);
    b(k) = saved;
    const double past = (lp.objective + h.offsets(k)) / nrm;
    if (past > h.tol) result.push_back(k);
  }
  return result;
}

}  // namespace polyprof
