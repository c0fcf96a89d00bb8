#include <doctest.h>

#include "core/profiler.hpp"
#include "core/report_io.hpp"
#include "core/vertex_enum.hpp"
#include "oracles.hpp"

using namespace polyprof;

namespace {

NetworkSpec zero_weight_net(const std::vector<int>& arch, double bias) {
  InitConfig cfg;
  cfg.bias_value = bias;
  NetworkSpec net = build_initialized(arch, cfg);
  for (Layer& l : net.layers) l.weights.setZero();
  return net;
}

NetworkProfile fake_profile(const std::vector<int>& simplices) {
  NetworkProfile p;
  for (int s : simplices) {
    RegionProfile r;
    r.n_simplices = s;
    r.n_faces = 4;
    p.regions.push_back(r);
    p.omega = std::max(p.omega, s);
  }
  return p;
}

}  // namespace

TEST_CASE("the constant network's single region is the box") {
  const NetworkSpec net = zero_weight_net({3, 7, 1}, 0.01);
  const auto fwd = forward_with_pattern(net, Eigen::Vector3d(0, 0, 0));
  const RegionProfile rp =
      profile_region(net, fwd.pattern, BoundingBox{3, 1.0}, true);
  CHECK(rp.n_vertices == 8);
  CHECK(rp.n_faces == 6);
  CHECK(rp.volume == doctest::Approx(8.0).epsilon(1e-9));

  const RegionProfile no_box =
      profile_region(net, fwd.pattern, BoundingBox{3, 1.0}, false);
  CHECK(no_box.n_faces == 0);  // every face of the cube is a box facet
}

TEST_CASE("a single splitting neuron gives two half-square regions") {
  NetworkSpec net;
  net.input_dim = 2;
  net.layers.push_back({(Eigen::MatrixXd(1, 2) << 1, 0).finished(),
                        Eigen::VectorXd::Zero(1), true});
  net.layers.push_back({(Eigen::MatrixXd(1, 1) << 1).finished(),
                        Eigen::VectorXd::Zero(1), false});
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Exhaustive;
  cfg.box = BoundingBox{2, 1.0};
  const NetworkProfile profile = profile_network(net, cfg, true);
  REQUIRE(profile.regions.size() == 2);
  for (const RegionProfile& r : profile.regions) {
    CHECK(r.n_faces == 4);
    CHECK(r.n_vertices == 4);
    CHECK(r.n_simplices == 2);
    CHECK(r.volume == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("degenerate patterns are rejected") {
  const NetworkSpec net = zero_weight_net({2, 3, 1}, 0.01);
  ActivationPattern p;
  p.bits = {0, 0, 0};  // impossible: biases are positive
  p.layer_offsets = {0, 3};
  CHECK_THROWS_AS(profile_region(net, p, BoundingBox{2, 1.0}, true), Error);
}

TEST_CASE("face counts match the V-representation oracle on 3-7-1 regions") {
  InitConfig icfg;
  icfg.seed = 19;
  const NetworkSpec net = build_initialized({3, 7, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Exhaustive;
  cfg.box = BoundingBox{3, 1.0};
  const NetworkProfile profile = profile_network(net, cfg, true);
  REQUIRE(profile.regions.size() >= 8);

  for (const RegionProfile& r : profile.regions) {
    const HalfspaceSystem h = region_halfspaces(net, r.pattern, cfg.box);
    const VertexSet verts =
        enumerate_vertices_trusted(h, nonredundant_indices(h));
    CHECK(r.n_faces == oracle::facet_count_from_vertices(verts.points));
    CHECK(r.n_vertices == verts.count());
  }
}

TEST_CASE("profile totals: volume conservation and the simplex-count sandwich") {
  InitConfig icfg;
  icfg.seed = 1;
  const NetworkSpec net = build_initialized({3, 7, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Exhaustive;
  cfg.box = BoundingBox{3, 1.0};
  const NetworkProfile profile = profile_network(net, cfg, true);

  CHECK(profile.total_volume == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(profile.total_simplices >= 77);
  CHECK(profile.total_simplices <= 482);
  CHECK(profile.dropped_degenerate == 0);

  for (const RegionProfile& r : profile.regions) {
    CHECK(r.n_simplices >= 1);
    CHECK(r.n_faces >= 4);     // d + 1
    CHECK(r.n_vertices >= 4);  // d + 1
    CHECK(r.volume > 0.0);
  }
}

TEST_CASE("profiling is deterministic across thread counts") {
  InitConfig icfg;
  icfg.seed = 6;
  const NetworkSpec net = build_initialized({3, 12, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Sample;
  cfg.n_samples = 2000;
  cfg.box = BoundingBox{3, 1.0};
  const NetworkProfile one = profile_network(net, cfg, true, 1);
  const NetworkProfile four = profile_network(net, cfg, true, 4);
  CHECK(profile_to_json(one) == profile_to_json(four));
}

TEST_CASE("histogram bins partition the regions") {
  const NetworkProfile p = fake_profile({1, 2, 9});
  const Histogram h = simplex_histogram(p, 5);
  REQUIRE(h.bins.size() == 2);
  CHECK(h.bins[0].lo == 1);
  CHECK(h.bins[0].hi == 5);
  CHECK(h.bins[0].count == 2);
  CHECK(h.bins[1].lo == 6);
  CHECK(h.bins[1].hi == 10);
  CHECK(h.bins[1].count == 1);

  const Histogram empty = simplex_histogram(NetworkProfile{}, 5);
  CHECK(empty.bins.empty());
  CHECK_THROWS_AS(simplex_histogram(p, 0), Error);
}

TEST_CASE("histogram counts sum to the region count on a real profile") {
  InitConfig icfg;
  icfg.seed = 2;
  const NetworkSpec net = build_initialized({3, 10, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Sample;
  cfg.n_samples = 3000;
  cfg.box = BoundingBox{3, 1.0};
  const NetworkProfile profile = profile_network(net, cfg, true, 2);
  const Histogram h = simplex_histogram(profile, 5);
  long long total = 0;
  for (const auto& b : h.bins) total += b.count;
  CHECK(total == static_cast<long long>(profile.regions.size()));
}

TEST_CASE("summary: threshold rule and edge cases") {
  const Summary s = summarize(fake_profile({1, 2, 9}));
  CHECK(s.omega == 9);
  CHECK(s.simple_fraction == doctest::Approx(2.0 / 3.0));

  // a single region with omega = 1: threshold floor(1/3) = 0, fraction 0
  const Summary single = summarize(fake_profile({1}));
  CHECK(single.simple_fraction == 0.0);

  CHECK_THROWS_AS(summarize(NetworkProfile{}), Error);
}

TEST_CASE("profile JSON round-trips through the report reader") {
  InitConfig icfg;
  icfg.seed = 14;
  const NetworkSpec net = build_initialized({2, 6, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Exhaustive;
  cfg.box = BoundingBox{2, 1.0};
  NetworkProfile profile = profile_network(net, cfg, true);
  profile.net_path = "net.json";

  const std::string text = profile_to_json(profile);
  const NetworkProfile back = profile_from_json(text);
  CHECK(back.regions.size() == profile.regions.size());
  CHECK(back.omega == profile.omega);
  CHECK(back.total_simplices == profile.total_simplices);
  for (size_t i = 0; i < profile.regions.size(); ++i)
    CHECK(back.regions[i].volume == profile.regions[i].volume);
}
