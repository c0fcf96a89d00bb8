#include <doctest.h>

#include <set>

#include "core/hitrun.hpp"
#include "oracles.hpp"

using namespace polyprof;

namespace {

HalfspaceSystem unit_cube_01(int d) {
  // [0,1]^d as -x_i <= 0 and x_i - 1 <= 0
  HalfspaceSystem h;
  h.normals = Eigen::MatrixXd::Zero(2 * d, d);
  h.offsets.resize(2 * d);
  for (int i = 0; i < d; ++i) {
    h.normals(i, i) = -1.0;
    h.offsets(i) = 0.0;
    h.normals(d + i, i) = 1.0;
    h.offsets(d + i) = -1.0;
  }
  return h;
}

}  // namespace

TEST_CASE("hit-and-run finds all cube faces quickly") {
  const HalfspaceSystem h = unit_cube_01(3);
  HitRunOptions opts;
  opts.checkpoint = 1000;
  opts.seed = 0;
  const HitRunResult r = hit_and_run_faces(h, std::nullopt, opts);
  CHECK(r.found == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(r.iterations < 5000);
}

TEST_CASE("hit-and-run on the triangle finds all three faces") {
  HalfspaceSystem h;
  h.normals.resize(3, 2);
  h.normals << -1, 0, 0, -1, 1, 1;
  h.offsets.resize(3);
  h.offsets << 0, 0, -1;
  HitRunOptions opts;
  opts.checkpoint = 1000;
  const HitRunResult r = hit_and_run_faces(h, std::nullopt, opts);
  CHECK(r.found == std::vector<int>{0, 1, 2});
}

TEST_CASE("redundant rows are never reported over a million iterations") {
  // cube plus ten rows pushed strictly outside
  HalfspaceSystem h = unit_cube_01(3);
  HalfspaceSystem extra;
  extra.normals.resize(10, 3);
  extra.offsets.resize(10);
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 3; ++j) extra.normals(i, j) = rng.normal();
    extra.normals.row(i).normalize();
    // support over the cube plus a positive gap keeps the row redundant
    double support = 0.0;
    for (int j = 0; j < 3; ++j) support += std::max(0.0, extra.normals(i, j));
    extra.offsets(i) = -(support + 0.1 + 0.05 * i);
  }
  h = h.appended(extra);

  HitRunOptions opts;
  opts.checkpoint = 1000000;
  opts.max_iterations = 1000000;
  opts.seed = 1;
  const HitRunResult r = hit_and_run_faces(h, std::nullopt, opts);
  for (int idx : r.found) CHECK(idx < 6);
  CHECK(r.found.size() == 6);
}

TEST_CASE("soundness against the LP oracle on random systems") {
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const HalfspaceSystem h = oracle::random_system(3, 8, 1.0, rng);
    HitRunOptions opts;
    opts.checkpoint = 3000;
    opts.seed = trial;
    const HitRunResult r = hit_and_run_faces(h, std::nullopt, opts);
    const std::vector<int> exact = nonredundant_indices(h);
    const std::set<int> exact_set(exact.begin(), exact.end());
    for (int idx : r.found) CHECK(exact_set.count(idx) == 1);
  }
}

TEST_CASE("deterministic trajectories for a fixed seed") {
  const HalfspaceSystem h = unit_cube_01(5);
  HitRunOptions opts;
  opts.checkpoint = 1000;
  opts.seed = 9;
  const HitRunResult a = hit_and_run_faces(h, std::nullopt, opts);
  const HitRunResult b = hit_and_run_faces(h, std::nullopt, opts);
  CHECK(a.found == b.found);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("sphere-direction mode also finds the cube faces") {
  const HalfspaceSystem h = unit_cube_01(3);
  HitRunOptions opts;
  opts.checkpoint = 1000;
  opts.sphere_directions = true;
  const HitRunResult r = hit_and_run_faces(h, std::nullopt, opts);
  CHECK(r.found.size() == 6);
}

TEST_CASE("an exterior or boundary start point is rejected") {
  const HalfspaceSystem h = unit_cube_01(3);
  Eigen::VectorXd corner = Eigen::VectorXd::Zero(3);  // on the boundary
  HitRunOptions opts;
  CHECK_THROWS_WITH_AS(hit_and_run_faces(h, corner, opts),
                       doctest::Contains("interior"), Error);
}

TEST_CASE("region face estimation on the constant network") {
  InitConfig icfg;
  icfg.bias_value = 0.01;
  NetworkSpec net = build_initialized({3, 10, 1}, icfg);
  for (Layer& l : net.layers) l.weights.setZero();
  HitRunOptions opts;
  opts.checkpoint = 1000;
  const auto est = estimate_region_faces(net, Eigen::Vector3d(0.1, 0.2, -0.3),
                                         BoundingBox{3, 1.0}, opts);
  CHECK(est.found == 6);  // only the 2d box faces exist
  CHECK(est.total_rows == 10 + 6);
}

TEST_CASE("merged chains recover the exact LP face set on net regions") {
  InitConfig icfg;
  icfg.seed = 44;
  const NetworkSpec net = build_initialized({3, 20, 10, 1}, icfg);
  Rng rng(3);
  int tested = 0;
  for (int trial = 0; trial < 6; ++trial) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x(i) = rng.uniform(-1, 1);

    const auto fwd = forward_with_pattern(net, x);
    const HalfspaceSystem h =
        region_halfspaces(net, fwd.pattern, BoundingBox{3, 1.0});

    HitRunOptions opts;
    opts.checkpoint = 50000;
    opts.seed = trial;
    const auto r = hit_and_run_faces_chains(h, std::nullopt, opts, 4);
    CHECK(r.found == nonredundant_indices(h));
    ++tested;
  }
  CHECK(tested == 6);
}
