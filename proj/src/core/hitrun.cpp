#include "hitrun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lp.hpp"
#include "rng.hpp"

namespace polyprof {

namespace {

constexpr double kTieTol = 1e-9;  // ambiguous first hits are not recorded

struct Walk {
  const HalfspaceSystem& h;
  Eigen::VectorXd row_norms;
  Eigen::VectorXd x;
  Eigen::VectorXd margins;  // a_i.x + b_i, all strictly negative

  explicit Walk(const HalfspaceSystem& sys, const Eigen::VectorXd& start)
      : h(sys), x(start) {
    row_norms.resize(h.size());
    for (int i = 0; i < h.size(); ++i) row_norms(i) = h.normals.row(i).norm();
    margins = h.margins(x);
  }

  bool strictly_interior(double tol) const {
    for (int i = 0; i < h.size(); ++i) {
      if (row_norms(i) <= 1e-300) {
        if (h.offsets(i) > tol) return false;  // impossible row
        continue;
      }
      if (margins(i) / row_norms(i) >= -tol) return false;
    }
    return true;
  }
};

}  // namespace

HitRunResult hit_and_run_faces(const HalfspaceSystem& h,
                               const std::optional<Eigen::VectorXd>& x0,
                               const HitRunOptions& opts) {
  h.validate();
  const int d = h.dim();
  if (opts.checkpoint < 1)
    raise(ErrorCode::InvalidArgument, "hit-and-run: checkpoint must be >= 1");

  Eigen::VectorXd start;
  if (x0.has_value()) {
    if (x0->size() != d)
      raise(ErrorCode::DimMismatch, "hit-and-run: start point dimension");
    start = *x0;
  } else {
    const ChebyshevCenter ball = chebyshev_center(h);
    if (!(ball.radius > h.tol))
      raise(ErrorCode::Degenerate, "hit-and-run: system has no interior");
    start = ball.point;
  }

  Walk walk(h, start);
  if (!walk.strictly_interior(h.tol))
    raise(ErrorCode::NotInterior, "hit-and-run: start point is not interior");

  Rng rng(opts.seed);
  std::vector<char> found_mask(h.size(), 0);
  int found_count = 0;

  HitRunResult res;
  Eigen::VectorXd v(d);

  auto record = [&](int idx) {
    if (idx >= 0 && !found_mask[idx]) {
      found_mask[idx] = 1;
      ++found_count;
      res.last_new = res.iterations;
    }
  };

  while (res.iterations < opts.max_iterations) {
    if (res.iterations - res.last_new >=
        static_cast<uint64_t>(opts.checkpoint) && res.iterations > 0)
      break;
    ++res.iterations;

    int axis = -1;
    double sign = 1.0;
    if (opts.sphere_directions) {
      double nv = 0.0;
      do {
        for (int i = 0; i < d; ++i) v(i) = rng.normal();
        nv = v.norm();
      } while (nv < 1e-12);
      v /= nv;
    } else {
      axis = static_cast<int>(rng.below(static_cast<uint64_t>(d)));
      sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
    }

    // chord extent: lambda_i = -margin_i / (a_i.v); margins are negative, so
    // positive denominators give the forward wall and negative the backward
    double lam_pos = std::numeric_limits<double>::infinity();
    double lam_pos2 = lam_pos;
    int hit_pos = -1;
    double lam_neg = -std::numeric_limits<double>::infinity();
    double lam_neg2 = lam_neg;
    int hit_neg = -1;

    for (int i = 0; i < h.size(); ++i) {
      const double denom = opts.sphere_directions
                               ? h.normals.row(i).dot(v)
                               : sign * h.normals(i, axis);
      if (std::abs(denom) <= h.tol * std::max(1.0, walk.row_norms(i)))
        continue;  // ray parallel to this row
      const double lam = -walk.margins(i) / denom;
      if (denom > 0.0) {
        if (lam < lam_pos) {
          lam_pos2 = lam_pos;
          lam_pos = lam;
          hit_pos = i;
        } else if (lam < lam_pos2) {
          lam_pos2 = lam;
        }
      } else {
        if (lam > lam_neg) {
          lam_neg2 = lam_neg;
          lam_neg = lam;
          hit_neg = i;
        } else if (lam > lam_neg2) {
          lam_neg2 = lam;
        }
      }
    }

    // both walls must exist for a bounded chord; otherwise resample
    if (hit_pos < 0 || hit_neg < 0) continue;

    // first-hit rows are faces, but only when the hit is unambiguous
    // (lam_pos2 stays +inf when there is a single candidate)
    if (lam_pos2 - lam_pos > kTieTol * std::max(1.0, std::abs(lam_pos)))
      record(hit_pos);
    if (lam_neg - lam_neg2 > kTieTol * std::max(1.0, std::abs(lam_neg)))
      record(hit_neg);

    // step to a uniform point of the open chord
    const double sigma =
        std::min(1.0 - 1e-9, std::max(1e-9, rng.uniform()));
    const double t = lam_neg + sigma * (lam_pos - lam_neg);
    if (opts.sphere_directions) {
      walk.x += t * v;
      walk.margins += t * (h.normals * v);
    } else {
      walk.x(axis) += t * sign;
      walk.margins += (t * sign) * h.normals.col(axis);
    }

    // interior preservation: periodic refresh kills incremental drift, and a
    // violating step is undone rather than accepted
    if ((res.iterations & 0xfff) == 0) walk.margins = walk.h.margins(walk.x);
    if (walk.margins.maxCoeff() >= 0.0) {
      if (opts.sphere_directions) {
        walk.x -= t * v;
      } else {
        walk.x(axis) -= t * sign;
      }
      walk.margins = walk.h.margins(walk.x);
    }
  }

  for (int i = 0; i < h.size(); ++i)
    if (found_mask[i]) res.found.push_back(i);
  return res;
}

HitRunResult hit_and_run_faces_chains(const HalfspaceSystem& h,
                                      const std::optional<Eigen::VectorXd>& x0,
                                      const HitRunOptions& opts, int n_chains) {
  if (n_chains < 1)
    raise(ErrorCode::InvalidArgument, "hit-and-run: need at least one chain");
  HitRunResult merged;
  std::vector<char> mask;
  for (int c = 0; c < n_chains; ++c) {
    HitRunOptions o = opts;
    o.seed = mix_seed(opts.seed, static_cast<uint64_t>(c));
    const HitRunResult r = hit_and_run_faces(h, x0, o);
    if (mask.empty()) mask.assign(h.size(), 0);
    for (int idx : r.found) mask[idx] = 1;
    merged.iterations += r.iterations;
    merged.last_new = std::max(merged.last_new, r.last_new);
  }
  for (int i = 0; i < h.size(); ++i)
    if (mask[i]) merged.found.push_back(i);
  return merged;
}

RegionFaceEstimate estimate_region_faces(const NetworkSpec& net,
                                         const Eigen::VectorXd& x,
                                         const BoundingBox& box,
                                         const HitRunOptions& opts) {
  net.validate();
  if (x.size() != net.input_dim)
    raise(ErrorCode::DimMismatch, "estimate_region_faces: point dimension");
  if (!box.contains(x))
    raise(ErrorCode::InvalidArgument,
          "estimate_region_faces: point outside the box");

  const auto fwd = forward_with_pattern(net, x);
  const HalfspaceSystem h = region_halfspaces(net, fwd.pattern, box);

  // nudge to the Chebyshev center when the sample sits on a boundary
  Eigen::VectorXd start = x;
  Walk probe(h, start);
  if (!probe.strictly_interior(h.tol)) {
    const ChebyshevCenter ball = chebyshev_center(h);
    if (!(ball.radius > h.tol))
      raise(ErrorCode::Degenerate, "estimate_region_faces: degenerate region");
    start = ball.point;
  }

  const HitRunResult r = hit_and_run_faces(h, start, opts);
  return {static_cast<int>(r.found.size()), r.iterations, h.size()};
}

}  // namespace polyprof
