#include "vertex_enum.hpp"

#include <algorithm>
#include <vector>

#include "lp.hpp"

namespace polyprof {

namespace {

constexpr int kSubsetRowLimit = 30;

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

// vertices from all rank-d subsets of the given rows, filtered by feasibility
// against the full system
std::vector<Eigen::VectorXd> subset_vertices(const HalfspaceSystem& h,
                                             const std::vector<int>& rows) {
  const int d = h.dim();
  const int n = static_cast<int>(rows.size());
  std::vector<Eigen::VectorXd> found;
  if (n < d) return found;

  Eigen::VectorXd row_norms(h.size());
  for (int i = 0; i < h.size(); ++i) row_norms(i) = h.normals.row(i).norm();

  std::vector<int> comb(d);
  for (int i = 0; i < d; ++i) comb[i] = i;

  Eigen::MatrixXd As(d, d);
  Eigen::VectorXd bs(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      As.row(i) = h.normals.row(rows[comb[i]]);
      bs(i) = -h.offsets(rows[comb[i]]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(As);
    lu.setThreshold(1e-10);
    if (lu.rank() == d) {
      const Eigen::VectorXd v = lu.solve(bs);
      const double scale = 1.0 + v.lpNorm<Eigen::Infinity>();
      bool ok = v.allFinite();
      for (int i = 0; ok && i < h.size(); ++i) {
        if (row_norms(i) <= 1e-300) {
          ok = h.offsets(i) <= h.tol;
          continue;
        }
        const double dist = (h.normals.row(i).dot(v) + h.offsets(i)) / row_norms(i);
        if (dist > 8.0 * h.tol * scale) ok = false;
      }
      if (ok) found.push_back(v);
    }

    // next combination in lexicographic order
    int i = d - 1;
    while (i >= 0 && comb[i] == n - d + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
  }
  return found;
}

VertexSet dedup_and_sort(std::vector<Eigen::VectorXd> candidates, int d,
                         double dedup_tol) {
  std::vector<Eigen::VectorXd> kept;
  for (const auto& v : candidates) {
    bool fresh = true;
    for (const auto& u : kept) {
      if ((u - v).norm() <= dedup_tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) kept.push_back(v);
  }
  std::sort(kept.begin(), kept.end(), lex_less);

  VertexSet out;
  out.dedup_tol = dedup_tol;
  out.points.resize(static_cast<int>(kept.size()), d);
  for (size_t i = 0; i < kept.size(); ++i)
    out.points.row(static_cast<int>(i)) = kept[i];
  return out;
}

}  // namespace

VertexSet enumerate_vertices(const HalfspaceSystem& h) {
  h.validate();
  const int d = h.dim();

  LpOptions opts;
  opts.tol = h.tol;
  const ChebyshevResult ball = chebyshev_ball(h.normals, -h.offsets, opts);
  if (ball.status == LpStatus::Unbounded)
    raise(ErrorCode::Unbounded, "enumerate_vertices: unbounded system");
  if (!(ball.radius > h.tol))
    raise(ErrorCode::Degenerate,
          "enumerate_vertices: empty or lower-dimensional system");

  // recession check: bounded iff every coordinate extreme is finite
  for (int j = 0; j < d; ++j) {
    for (double sign : {1.0, -1.0}) {
      const Eigen::VectorXd c = sign * Eigen::VectorXd::Unit(d, j);
      if (lp_maximize(h.normals, -h.offsets, c, ball.center, opts).status ==
          LpStatus::Unbounded)
        raise(ErrorCode::Unbounded, "enumerate_vertices: unbounded system");
    }
  }

  std::vector<int> rows;
  if (h.size() <= kSubsetRowLimit) {
    rows.resize(h.size());
    for (int i = 0; i < h.size(); ++i) rows[i] = i;
  } else {
    rows = nonredundant_indices(h, ball.center);
  }
  return dedup_and_sort(subset_vertices(h, rows), d, kDedupTol);
}

VertexSet enumerate_vertices_trusted(const HalfspaceSystem& h,
                                     const std::vector<int>& facet_rows) {
  return dedup_and_sort(subset_vertices(h, facet_rows), h.dim(), kDedupTol);
}

}  // namespace polyprof
