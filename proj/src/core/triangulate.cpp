#include "triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "rng.hpp"

namespace polyprof {

namespace {

constexpr uint64_t kLiftSeed = 0x706f6c7970726f66ull;  // fixed: results must replicate

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Facet {
  std::vector<int> verts;   // D point ids
  std::vector<int> neigh;   // neigh[k] is across the ridge opposite verts[k]
  Eigen::VectorXd normal;   // unit, outward
  double offset = 0.0;      // normal . q = offset on the facet plane
  bool dead = false;
};

class Hull {
 public:
  // q: n x D lifted points, assumed to affinely span R^D
  Hull(const Eigen::MatrixXd& q, const std::vector<int>& init_ids)
      : q_(q), D_(static_cast<int>(q.cols())) {
    interior_ = Eigen::VectorXd::Zero(D_);
    for (int id : init_ids) interior_ += q_.row(id).transpose();
    interior_ /= static_cast<double>(init_ids.size());

    const double span = (q_.colwise().maxCoeff() - q_.colwise().minCoeff())
                            .lpNorm<Eigen::Infinity>();
    eps_vis_ = 1e-12 * (1.0 + span);

    // simplex facets: omit one vertex each; neighbor across ridge k is the
    // facet omitting that ridge's missing vertex
    const int n_init = static_cast<int>(init_ids.size());
    for (int omit = 0; omit < n_init; ++omit) {
      Facet f;
      for (int i = 0; i < n_init; ++i)
        if (i != omit) f.verts.push_back(init_ids[i]);
      f.neigh.assign(D_, -1);
      set_plane(f);
      facets_.push_back(std::move(f));
    }
    // facet "omit" lacks init_ids[omit]; its ridge opposite verts[k] lacks
    // also that vertex, and the facet containing everything except verts[k]
    // is the one omitting verts[k]
    for (int omit = 0; omit < n_init; ++omit) {
      Facet& f = facets_[omit];
      for (int k = 0; k < D_; ++k) {
        const int missing = f.verts[k];
        for (int other = 0; other < n_init; ++other)
          if (init_ids[other] == missing) f.neigh[k] = other;
      }
    }
  }

  void insert(int pid) {
    const Eigen::VectorXd p = q_.row(pid).transpose();
    std::vector<int> visible;
    for (int fi = 0; fi < static_cast<int>(facets_.size()); ++fi) {
      const Facet& f = facets_[fi];
      if (!f.dead && f.normal.dot(p) - f.offset > eps_vis_)
        visible.push_back(fi);
    }
    if (visible.empty()) return;  // inside current hull

    std::vector<char> is_visible(facets_.size(), 0);
    for (int fi : visible) is_visible[fi] = 1;

    struct RidgeHit {
      std::vector<int> ridge;  // sorted D-1 ids
      int outside_facet;       // surviving neighbor across the ridge
    };
    std::vector<RidgeHit> horizon;
    for (int fi : visible) {
      const Facet& f = facets_[fi];
      for (int k = 0; k < D_; ++k) {
        const int g = f.neigh[k];
        if (g >= 0 && !is_visible[g] && !facets_[g].dead) {
          RidgeHit hit;
          for (int i = 0; i < D_; ++i)
            if (i != k) hit.ridge.push_back(f.verts[i]);
          std::sort(hit.ridge.begin(), hit.ridge.end());
          hit.outside_facet = g;
          horizon.push_back(std::move(hit));
        }
      }
    }
    for (int fi : visible) facets_[fi].dead = true;

    // cone new facets over the horizon
    std::map<std::vector<int>, std::pair<int, int>> ridge_owner;  // sub-ridge -> (facet, slot)
    for (const RidgeHit& hit : horizon) {
      Facet nf;
      nf.verts = hit.ridge;
      nf.verts.push_back(pid);
      nf.neigh.assign(D_, -1);
      set_plane(nf);
      const int nf_id = static_cast<int>(facets_.size());

      // slot opposite pid connects to the surviving outside facet
      const int pid_slot = static_cast<int>(nf.verts.size()) - 1;
      nf.neigh[pid_slot] = hit.outside_facet;
      Facet& outside = facets_[hit.outside_facet];
      for (int k = 0; k < D_; ++k) {
        std::vector<int> r;
        for (int i = 0; i < D_; ++i)
          if (i != k) r.push_back(outside.verts[i]);
        std::sort(r.begin(), r.end());
        if (r == hit.ridge) outside.neigh[k] = nf_id;
      }

      // slots opposite ridge vertices pair up among the new facets
      for (int k = 0; k < pid_slot; ++k) {
        std::vector<int> sub;
        for (int i = 0; i < static_cast<int>(nf.verts.size()); ++i)
          if (i != k) sub.push_back(nf.verts[i]);
        std::sort(sub.begin(), sub.end());
        auto it = ridge_owner.find(sub);
        if (it == ridge_owner.end()) {
          ridge_owner.emplace(sub, std::make_pair(nf_id, k));
        } else {
          nf.neigh[k] = it->second.first;
          facets_[it->second.first].neigh[it->second.second] = nf_id;
        }
      }
      facets_.push_back(std::move(nf));
    }
  }

  const std::vector<Facet>& facets() const { return facets_; }

 private:
  void set_plane(Facet& f) {
    Eigen::MatrixXd edges(D_ - 1, D_);
    const Eigen::VectorXd base = q_.row(f.verts[0]).transpose();
    for (int i = 1; i < D_; ++i)
      edges.row(i - 1) = q_.row(f.verts[i]) - q_.row(f.verts[0]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeFullV);
    f.normal = svd.matrixV().col(D_ - 1);
    f.offset = f.normal.dot(base);
    if (f.normal.dot(interior_) > f.offset) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
  }

  const Eigen::MatrixXd& q_;
  int D_;
  Eigen::VectorXd interior_;
  double eps_vis_;
  std::vector<Facet> facets_;
};

// greedy affinely independent subset of size k+1; empty result on failure
std::vector<int> affine_basis(const Eigen::MatrixXd& pts, int k, double eps) {
  const int n = static_cast<int>(pts.rows());
  const int dim = static_cast<int>(pts.cols());
  std::vector<int> ids = {0};
  Eigen::MatrixXd Q(dim, k);
  int nq = 0;
  while (static_cast<int>(ids.size()) < k + 1) {
    int best = -1;
    double best_norm = eps;
    Eigen::VectorXd best_dir;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd r = (pts.row(i) - pts.row(ids[0])).transpose();
      for (int c = 0; c < nq; ++c) r -= Q.col(c).dot(r) * Q.col(c);
      const double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = i;
        best_dir = r / nr;
      }
    }
    if (best < 0) return {};
    ids.push_back(best);
    Q.col(nq++) = best_dir;
  }
  return ids;
}

std::vector<int> sorted_simplex(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

double simplex_volume(const Eigen::MatrixXd& points,
                      const std::vector<int>& simplex) {
  const int d = static_cast<int>(points.cols());
  Eigen::MatrixXd edges(d, d);
  for (int i = 0; i < d; ++i)
    edges.row(i) = points.row(simplex[i + 1]) - points.row(simplex[0]);
  return std::abs(edges.determinant()) / factorial(d);
}

SimplicialComplex delaunay_triangulate(const VertexSet& v) {
  const int d = v.dim();
  const int n = v.count();
  SimplicialComplex out;
  if (d < 1) raise(ErrorCode::InvalidArgument, "triangulate: dim must be >= 1");
  if (n < d + 1)
    raise(ErrorCode::DegenerateHull, "triangulate: fewer than d+1 vertices");

  const double coord_scale = 1.0 + v.points.lpNorm<Eigen::Infinity>();

  if (d == 1) {
    // VertexSet rows are sorted, so cells are consecutive gaps
    for (int i = 0; i + 1 < n; ++i) {
      out.simplices.push_back({i, i + 1});
      out.volumes.push_back(v.points(i + 1, 0) - v.points(i, 0));
    }
    return out;
  }

  // the points must span d dimensions
  if (affine_basis(v.points, d, 1e-9 * coord_scale).empty())
    raise(ErrorCode::DegenerateHull, "triangulate: affine hull below dim d");

  if (n == d + 1) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    out.simplices.push_back(all);
    out.volumes.push_back(simplex_volume(v.points, all));
    return out;
  }

  // lift onto the paraboloid with per-index height perturbation
  const double height_scale = 1.0 + v.points.rowwise().squaredNorm().maxCoeff();
  const double eta = 1e-8 * height_scale;
  Eigen::MatrixXd q(n, d + 1);
  for (int i = 0; i < n; ++i) {
    q.row(i).head(d) = v.points.row(i);
    uint64_t s = kLiftSeed ^ (0x9e3779b97f4a7c15ull * (i + 1));
    q(i, d) = v.points.row(i).squaredNorm() +
              eta * u64_to_unit_double(splitmix64(s));
  }

  const std::vector<int> init = affine_basis(q, d + 1, 1e-12 * height_scale);
  if (init.empty())
    raise(ErrorCode::DegenerateHull, "triangulate: lifted points degenerate");

  Hull hull(q, init);
  std::vector<char> used(n, 0);
  for (int id : init) used[id] = 1;
  for (int i = 0; i < n; ++i)
    if (!used[i]) hull.insert(i);

  for (const Facet& f : hull.facets()) {
    if (f.dead) continue;
    if (f.normal(d) < -1e-9) {
      std::vector<int> s = sorted_simplex(f.verts);
      const double vol = simplex_volume(v.points, s);
      if (vol > 0.0) {
        out.simplices.push_back(std::move(s));
        out.volumes.push_back(vol);
      }
    }
  }

  // canonical order
  std::vector<int> order(out.simplices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return out.simplices[a] < out.simplices[b];
  });
  SimplicialComplex sorted;
  for (int idx : order) {
    sorted.simplices.push_back(std::move(out.simplices[idx]));
    sorted.volumes.push_back(out.volumes[idx]);
  }
  return sorted;
}

double volume_of(const SimplicialComplex& s) {
  double total = 0.0;
  for (double v : s.volumes) total += v;
  return total;
}

}  // namespace polyprof
