#include "regions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lp.hpp"
#include "rng.hpp"
#include "vertex_enum.hpp"

namespace polyprof {

std::vector<ActivationPattern> sample_regions(const NetworkSpec& net,
                                              const EnumerationConfig& cfg) {
  net.validate();
  if (cfg.n_samples < 1)
    raise(ErrorCode::InvalidArgument, "sample_regions: n_samples must be >= 1");
  if (cfg.box.dim != net.input_dim)
    raise(ErrorCode::DimMismatch, "sample_regions: box dimension mismatch");

  const int d = net.input_dim;
  const double half = cfg.box.half_width;
  SampleStream stream(cfg.seed);

  std::set<std::vector<uint8_t>> seen;
  Eigen::VectorXd x(d);
  for (int i = 0; i < cfg.n_samples; ++i) {
    for (int j = 0; j < d; ++j)
      x(j) = (2.0 * stream.coord(i, j) - 1.0) * half;
    seen.insert(forward_with_pattern(net, x).pattern.bits);
  }

  const std::vector<int> offsets = net.layer_offsets();
  std::vector<ActivationPattern> out;
  out.reserve(seen.size());
  for (const auto& bits : seen) {
    ActivationPattern p;
    p.bits = bits;
    p.layer_offsets = offsets;
    out.push_back(std::move(p));
  }
  return out;  // std::set iteration is already the sorted order
}

namespace {

// Bit-by-bit search over activation patterns. Rows for decided neurons only
// depend on earlier layers' bits, so each new bit appends one inequality and
// an infeasible prefix kills its whole subtree.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const NetworkSpec& net, const BoundingBox& box)
      : net_(net), offsets_(net.layer_offsets()),
        n_total_(net.hidden_neuron_count()), d_(net.input_dim) {
    rows_.resize(n_total_ + 2 * d_, d_);
    rhs_.resize(n_total_ + 2 * d_);
    const HalfspaceSystem bh = box.halfspaces();
    rows_.topRows(2 * d_) = bh.normals;
    rhs_.head(2 * d_) = -bh.offsets;  // stored as A x <= b
    n_rows_ = 2 * d_;
    bits_.assign(n_total_, 0);
    // a strictly interior point of the current prefix system; box center
    last_center_ = Eigen::VectorXd::Zero(d_);
    last_radius_ = box.half_width;
  }

  std::vector<ActivationPattern> run() {
    results_.clear();
    descend_layer(0, net_.layers[0].weights, net_.layers[0].bias);
    std::sort(results_.begin(), results_.end());
    return results_;
  }

 private:
  void descend_layer(int layer, const Eigen::MatrixXd& M,
                     const Eigen::VectorXd& v) {
    if (layer == net_.hidden_layer_count()) {
      ActivationPattern p;
      p.bits = bits_;
      p.layer_offsets = offsets_;
      results_.push_back(std::move(p));
      return;
    }
    descend_neuron(layer, 0, M, v);
  }

  void descend_neuron(int layer, int j, const Eigen::MatrixXd& M,
                      const Eigen::VectorXd& v) {
    if (j == static_cast<int>(M.rows())) {
      // mask and push the composite through the next layer
      Eigen::MatrixXd Mm = M;
      Eigen::VectorXd vm = v;
      for (int r = 0; r < M.rows(); ++r) {
        if (!bits_[offsets_[layer] + r]) {
          Mm.row(r).setZero();
          vm(r) = 0.0;
        }
      }
      const Layer& next = net_.layers[layer + 1];
      descend_layer(layer + 1, next.weights * Mm, next.weights * vm + next.bias);
      return;
    }

    const Eigen::VectorXd saved_center = last_center_;
    const double saved_radius = last_radius_;
    for (int bit = 0; bit <= 1; ++bit) {
      const double s = bit ? 1.0 : -1.0;
      bits_[offsets_[layer] + j] = static_cast<uint8_t>(bit);
      rows_.row(n_rows_) = -s * M.row(j);
      rhs_(n_rows_) = s * v(j);  // -s(w.x + b) <= 0  ->  (-s w).x <= s b
      ++n_rows_;
      if (prefix_feasible()) descend_neuron(layer, j + 1, M, v);
      --n_rows_;
      last_center_ = saved_center;
      last_radius_ = saved_radius;
    }
  }

  bool prefix_feasible() {
    // cheap accept: the tracked interior ball may survive the new row; its
    // radius shrinks to the distance from the new hyperplane
    const int k = n_rows_ - 1;
    const double nrm = rows_.row(k).norm();
    if (nrm > 1e-300) {
      const double dist = (rhs_(k) - rows_.row(k).dot(last_center_)) / nrm;
      if (dist > kActivityTol && last_radius_ > kActivityTol) {
        last_radius_ = std::min(last_radius_, dist);
        return true;
      }
    } else {
      return rhs_(k) >= -kActivityTol;  // vacuous or impossible row
    }

    LpOptions opts;
    opts.tol = kActivityTol;
    const ChebyshevResult ball =
        chebyshev_ball(rows_.topRows(n_rows_), rhs_.head(n_rows_), opts);
    if (ball.status != LpStatus::Unbounded && !(ball.radius > kActivityTol))
      return false;
    last_center_ = ball.center;
    last_radius_ = ball.radius;
    return true;
  }

  const NetworkSpec& net_;
  std::vector<int> offsets_;
  int n_total_, d_;
  Eigen::MatrixXd rows_;
  Eigen::VectorXd rhs_;
  int n_rows_ = 0;
  std::vector<uint8_t> bits_;
  Eigen::VectorXd last_center_;
  double last_radius_ = 0.0;
  std::vector<ActivationPattern> results_;
};

}  // namespace

std::vector<ActivationPattern> exhaustive_regions(const NetworkSpec& net,
                                                  const EnumerationConfig& cfg) {
  net.validate();
  if (cfg.box.dim != net.input_dim)
    raise(ErrorCode::DimMismatch, "exhaustive_regions: box dimension mismatch");
  if (net.hidden_neuron_count() > cfg.exhaustive_cap)
    raise(ErrorCode::TooLarge,
          "exhaustive_regions: hidden neuron count exceeds the cap");
  ExhaustiveSearch search(net, cfg.box);
  return search.run();
}

std::vector<ActivationPattern> enumerate_regions(const NetworkSpec& net,
                                                 const EnumerationConfig& cfg) {
  return cfg.mode == EnumerationConfig::Mode::Sample ? sample_regions(net, cfg)
                                                     : exhaustive_regions(net, cfg);
}

CrossSection cross_section_regions(const NetworkSpec& net,
                                   const Eigen::VectorXd& p1,
                                   const Eigen::VectorXd& p2, double extent,
                                   uint64_t seed, int n_samples, int cap) {
  if (!(extent > 0.0))
    raise(ErrorCode::InvalidArgument, "cross-section: extent must be positive");

  CrossSection cs;
  cs.plane = restrict_to_plane(net, p1, p2, seed);
  cs.extent = extent;
  cs.seed = seed;

  EnumerationConfig cfg;
  cfg.box = BoundingBox{2, extent};
  cfg.seed = seed;
  cfg.n_samples = n_samples;
  cfg.exhaustive_cap = cap;
  const bool exact = cs.plane.net2d.hidden_neuron_count() <= cap;
  cfg.mode = exact ? EnumerationConfig::Mode::Exhaustive
                   : EnumerationConfig::Mode::Sample;
  cs.mode = exact ? "exhaustive" : "sample";

  const auto patterns = enumerate_regions(cs.plane.net2d, cfg);
  for (const ActivationPattern& pat : patterns) {
    const HalfspaceSystem h = region_halfspaces(cs.plane.net2d, pat, cfg.box);
    LpOptions opts;
    opts.tol = h.tol;
    const ChebyshevResult ball = chebyshev_ball(h.normals, -h.offsets, opts);
    if (!(ball.radius > h.tol)) continue;  // sampled sliver, not a 2D region

    const std::vector<int> faces = nonredundant_indices(h, ball.center);
    const VertexSet vs = enumerate_vertices_trusted(h, faces);
    if (vs.count() < 3) continue;

    // order the polygon counter-clockwise around its centroid
    const Eigen::RowVector2d centroid = vs.points.colwise().mean();
    std::vector<int> order(vs.count());
    for (int i = 0; i < vs.count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto ra = vs.points.row(a) - centroid;
      const auto rb = vs.points.row(b) - centroid;
      return std::atan2(ra(1), ra(0)) < std::atan2(rb(1), rb(0));
    });

    SectionPolygon poly;
    poly.pattern = pat;
    poly.polygon.resize(vs.count(), 2);
    for (int i = 0; i < vs.count(); ++i)
      poly.polygon.row(i) = vs.points.row(order[i]);
    poly.edges = vs.count();
    double area = 0.0;
    for (int i = 0; i < vs.count(); ++i) {
      const auto a = poly.polygon.row(i);
      const auto b = poly.polygon.row((i + 1) % vs.count());
      area += a(0) * b(1) - b(0) * a(1);
    }
    poly.area = 0.5 * std::abs(area);
    cs.polygons.push_back(std::move(poly));
  }
  return cs;
}

}  // namespace polyprof
