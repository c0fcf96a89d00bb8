#pragma once

// Brute-force oracles used by the tests. These deliberately avoid the
// library's own LP / hull code paths so that agreement is meaningful.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "core/halfspaces.hpp"
#include "core/rng.hpp"

namespace oracle {

// Supporting hyperplanes through d affinely independent vertices with all
// other vertices on one side; count after dedup. Equals the facet count for
// polytopes given by their extreme points (intended for d <= 3, small sets).
struct Plane {
  Eigen::VectorXd n;  // unit
  double c;           // n.x = c on the plane
};

inline std::vector<Plane> supporting_planes(const Eigen::MatrixXd& pts,
                                            double tol = 1e-6) {
  const int m = static_cast<int>(pts.rows());
  const int d = static_cast<int>(pts.cols());
  std::vector<Plane> planes;

  std::vector<int> comb(d);
  for (int i = 0; i < d; ++i) comb[i] = i;
  if (m < d) return planes;

  const Eigen::VectorXd centroid = pts.colwise().mean();

  while (true) {
    Eigen::MatrixXd edges(d - 1, d);
    for (int i = 1; i < d; ++i)
      edges.row(i - 1) = pts.row(comb[i]) - pts.row(comb[0]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeFullV);
    const bool independent =
        d == 1 || svd.singularValues().minCoeff() > 1e-9;
    if (independent) {
      Eigen::VectorXd n = svd.matrixV().col(d - 1);
      double c = n.dot(pts.row(comb[0]));
      bool below = true, above = true;
      for (int i = 0; i < m; ++i) {
        const double s = n.dot(pts.row(i)) - c;
        if (s > tol) above = false;
        if (s < -tol) below = false;
      }
      if (below || above) {
        if (n.dot(centroid) > c) {
          n = -n;
          c = -c;
        }
        bool fresh = true;
        for (const Plane& p : planes)
          if ((p.n - n).norm() < 1e-6 && std::abs(p.c - c) < 1e-6 * (1.0 + std::abs(c)))
            fresh = false;
        if (fresh) planes.push_back({n, c});
      }
    }
    int i = d - 1;
    while (i >= 0 && comb[i] == m - d + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
  }
  return planes;
}

inline int facet_count_from_vertices(const Eigen::MatrixXd& pts,
                                     double tol = 1e-6) {
  return static_cast<int>(supporting_planes(pts, tol).size());
}

// Polytope volume via the divergence theorem: V = (1/d) sum_f (n.p_f) area_f
// with outward unit normals. Facet polygon areas come from a shoelace pass in
// an in-plane basis, so nothing here touches the triangulation code. d = 2 or 3.
inline double volume_by_divergence(const Eigen::MatrixXd& pts,
                                   double tol = 1e-6) {
  const int d = static_cast<int>(pts.cols());
  const std::vector<Plane> planes = supporting_planes(pts, tol);
  double vol = 0.0;
  for (const Plane& pl : planes) {
    std::vector<int> on;
    for (int i = 0; i < static_cast<int>(pts.rows()); ++i)
      if (std::abs(pl.n.dot(pts.row(i)) - pl.c) <= tol * (1.0 + pts.row(i).norm()))
        on.push_back(i);
    if (static_cast<int>(on.size()) < d) continue;

    double area = 0.0;
    if (d == 2) {
      // facet is a segment
      double lo = 1e300, hi = -1e300;
      Eigen::Vector2d t(-pl.n(1), pl.n(0));
      for (int i : on) {
        const double s = t.dot(pts.row(i));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      area = hi - lo;
    } else {
      // 3D: order polygon vertices by angle in the plane
      Eigen::Vector3d n = pl.n;
      Eigen::Vector3d u = n.unitOrthogonal();
      Eigen::Vector3d w = n.cross(u);
      Eigen::Vector3d center = Eigen::Vector3d::Zero();
      for (int i : on) center += pts.row(i).transpose();
      center /= static_cast<double>(on.size());
      std::vector<std::pair<double, int>> ang;
      for (int i : on) {
        Eigen::Vector3d r = pts.row(i).transpose() - center;
        ang.push_back({std::atan2(w.dot(r), u.dot(r)), i});
      }
      std::sort(ang.begin(), ang.end());
      for (size_t k = 0; k < ang.size(); ++k) {
        const Eigen::Vector3d a = pts.row(ang[k].second);
        const Eigen::Vector3d b = pts.row(ang[(k + 1) % ang.size()].second);
        area += 0.5 * n.dot((a - center).cross(b - center));
      }
      area = std::abs(area);
    }
    vol += pl.c * area;  // pl.c = n.p for p on the plane, n outward
  }
  return vol / d;
}

// barycentric coordinates of x in the simplex with the given point rows
inline Eigen::VectorXd barycentric(const Eigen::MatrixXd& pts,
                                   const std::vector<int>& simplex,
                                   const Eigen::VectorXd& x) {
  const int d = static_cast<int>(pts.cols());
  Eigen::MatrixXd E(d, d);
  for (int i = 0; i < d; ++i)
    E.col(i) = (pts.row(simplex[i + 1]) - pts.row(simplex[0])).transpose();
  const Eigen::VectorXd mu =
      E.partialPivLu().solve(x - pts.row(simplex[0]).transpose());
  Eigen::VectorXd lambda(d + 1);
  lambda(0) = 1.0 - mu.sum();
  lambda.tail(d) = mu;
  return lambda;
}

inline bool inside_simplex(const Eigen::MatrixXd& pts,
                           const std::vector<int>& simplex,
                           const Eigen::VectorXd& x, double tol = 1e-9) {
  return barycentric(pts, simplex, x).minCoeff() > tol;
}

inline Eigen::VectorXd random_point_in_simplex(const Eigen::MatrixXd& pts,
                                               const std::vector<int>& simplex,
                                               polyprof::Rng& rng) {
  const int d = static_cast<int>(pts.cols());
  Eigen::VectorXd lambda(d + 1);
  for (int i = 0; i <= d; ++i)
    lambda(i) = -std::log(1.0 - rng.uniform());
  lambda /= lambda.sum();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
  for (int i = 0; i <= d; ++i)
    x += lambda(i) * pts.row(simplex[i]).transpose();
  return x;
}

// nonempty full-dimensional random system: unit normals tangent-ish around a
// guaranteed interior point, clipped by a box
inline polyprof::HalfspaceSystem random_system(int d, int k, double box_half,
                                               polyprof::Rng& rng) {
  polyprof::HalfspaceSystem h;
  h.normals.resize(k, d);
  h.offsets.resize(k);
  Eigen::VectorXd center(d);
  for (int j = 0; j < d; ++j) center(j) = rng.uniform(-0.3, 0.3) * box_half;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd a(d);
    for (int j = 0; j < d; ++j) a(j) = rng.normal();
    a.normalize();
    const double slack = rng.uniform(0.15, 0.9) * box_half;
    h.normals.row(i) = a;
    h.offsets(i) = -(a.dot(center) + slack);
  }
  polyprof::BoundingBox bb{d, box_half};
  return h.appended(bb.halfspaces());
}

}  // namespace oracle
