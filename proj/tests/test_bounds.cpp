#include <doctest.h>

#include "core/bounds.hpp"
#include "core/regions.hpp"
#include "core/report_io.hpp"

using namespace polyprof;

TEST_CASE("zaslavsky region counts") {
  CHECK(zaslavsky_regions(3, 2) == 7);
  CHECK(zaslavsky_regions(0, 5) == 1);
  CHECK(zaslavsky_regions(7, 3) == 64);
}

TEST_CASE("central arrangement region counts") {
  CHECK(central_regions(3, 2) == 6);
  CHECK(central_regions(1, 1) == 2);
  CHECK(central_regions(1, 4) == 2);
  CHECK(central_regions(4, 3) == 14);
}

TEST_CASE("one-layer simplex bounds at reference sizes") {
  CHECK(one_layer_simplices_upper(3, 7) == 482);
  CHECK(one_layer_simplices_upper(3, 8) == 686);
  CHECK(one_layer_simplices_upper(3, 9) == 942);
  CHECK(one_layer_simplices_upper(3, 10) == 1256);

  CHECK(one_layer_simplices_lower(3, 7) == 77);
  CHECK(one_layer_simplices_lower(3, 8) == 116);
  CHECK(one_layer_simplices_lower(3, 9) == 166);
  CHECK(one_layer_simplices_lower(3, 10) == 230);

  CHECK(one_layer_simplices_upper(1, 1) == 4);
}

TEST_CASE("multi-layer bounds: L = 1 reduction and direct evaluations") {
  const auto one = multilayer_simplices_bounds(3, 7, 1);
  CHECK(one.upper == 482);
  CHECK(one.lower == 64);  // region-count form: sum_{j<=3} C(7,j)

  // floor(4/2)^2 * (1 + 4 + 6) = 44
  const auto two = multilayer_simplices_bounds(2, 4, 2);
  CHECK(two.lower == 44);
  // recursion by hand: F1 = 52, R1 = 11, F2 = 2*4*(1+3)*11 + (1+4)*52
  CHECK(two.upper == 612);
}

TEST_CASE("the sandwich holds across a parameter grid") {
  for (long d = 1; d <= 4; ++d)
    for (long n = 1; n <= 20; ++n)
      for (long L = 1; L <= 4; ++L) {
        const auto b = multilayer_simplices_bounds(d, n, L);
        CHECK(b.lower <= b.upper);
        if (L == 1) CHECK(one_layer_simplices_lower(d, n) <= b.upper);
      }
}

TEST_CASE("multi-layer region bound") {
  // single layer reduces to zaslavsky
  CHECK(multilayer_regions_upper(3, {7}) == zaslavsky_regions(7, 3));
  // 10701 * 1351
  CHECK(multilayer_regions_upper(3, {40, 20}) == BigInt(14457051));
}

TEST_CASE("enumerated region counts stay under the product bound") {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    InitConfig icfg;
    icfg.seed = seed;
    const NetworkSpec net = build_initialized({2, 4, 4, 1}, icfg);
    EnumerationConfig cfg;
    cfg.mode = EnumerationConfig::Mode::Exhaustive;
    cfg.box = BoundingBox{2, 1.0};
    const auto regions = exhaustive_regions(net, cfg);
    CHECK(BigInt(regions.size()) <= multilayer_regions_upper(2, {4, 4}));
  }
}

TEST_CASE("zaslavsky equality on a general-position one-layer net") {
  InitConfig icfg;
  icfg.method = InitMethod::Kaiming;
  icfg.seed = 5;
  icfg.bias_value = 0.01;
  const NetworkSpec net = build_initialized({3, 7, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Exhaustive;
  cfg.box = BoundingBox{3, 100.0};  // large enough to see every region
  const auto regions = exhaustive_regions(net, cfg);
  CHECK(BigInt(regions.size()) == zaslavsky_regions(7, 3));
}

TEST_CASE("central formula matches zero-bias enumeration") {
  InitConfig icfg;
  icfg.method = InitMethod::Kaiming;
  icfg.seed = 2;
  icfg.bias_value = 0.0;
  const NetworkSpec net = build_initialized({3, 4, 1}, icfg);
  EnumerationConfig cfg;
  cfg.mode = EnumerationConfig::Mode::Exhaustive;
  cfg.box = BoundingBox{3, 1.0};
  const auto regions = exhaustive_regions(net, cfg);
  CHECK(BigInt(regions.size()) == central_regions(4, 3));
}

TEST_CASE("average-face bound values") {
  CHECK(avg_face_bound(AvgFaceSetting::OneLayer, 3) == 7);
  CHECK(avg_face_bound(AvgFaceSetting::MultilayerD2, 2) == 4);
  CHECK(avg_face_bound(AvgFaceSetting::ZeroBias, 3) == 8);
  CHECK(avg_face_bound(AvgFaceSetting::LowRankMultilayer, 5, 2) == 8);
  CHECK(avg_face_bound(AvgFaceSetting::LowRankOneLayer, 0, 2) == 5);
  CHECK_THROWS_AS(avg_face_bound(AvgFaceSetting::LowRankMultilayer, 2, 5), Error);
}

TEST_CASE("parameter counts") {
  CHECK(param_count({3, 40, 20, 1}) == 1001);
  CHECK(param_count({1, 1}) == 2);
  CHECK_THROWS_AS(param_count({3}), Error);

  // theta(L n^2) growth: quadratic in width, linear in depth
  auto square_net_params = [](long d, long n, long L) {
    std::vector<long> widths = {d};
    for (long l = 0; l < L; ++l) widths.push_back(n);
    widths.push_back(1);
    return param_count(widths);
  };
  for (long n = 10; n <= 100; n += 10) {
    const double ratio =
        static_cast<double>(square_net_params(3, 2 * n, 4)) /
        static_cast<double>(square_net_params(3, n, 4));
    CHECK(ratio > 3.3);
    CHECK(ratio < 4.5);
  }
  const double depth_ratio =
      static_cast<double>(square_net_params(3, 100, 8)) /
      static_cast<double>(square_net_params(3, 100, 4));
  CHECK(depth_ratio > 1.8);
  CHECK(depth_ratio < 2.4);
}

TEST_CASE("big integers do not overflow at the spec scale") {
  const auto big = multilayer_simplices_bounds(50, 10000, 50);
  CHECK(big.upper > 0);
  CHECK(big.lower > 0);
  CHECK(big.lower <= big.upper);
}

TEST_CASE("bounds report carries the expected named values") {
  const BoundsReport rep = compute_bounds_report({3, 7, 1}, -1, false);
  REQUIRE(rep.find("simplices_upper"));
  CHECK(*rep.find("simplices_upper") == "482");
  REQUIRE(rep.find("simplices_lower"));
  CHECK(*rep.find("simplices_lower") == "77");
  CHECK(*rep.find("params") == "36");
  CHECK(*rep.find("avg_faces_bound_one_layer") == "7");

  const BoundsReport low = compute_bounds_report({3, 40, 20, 1}, 2, false);
  REQUIRE(low.find("avg_faces_bound_lowrank_multilayer"));
  CHECK(*low.find("avg_faces_bound_lowrank_multilayer") == "6");  // 2*2+3-1
  CHECK(*low.find("regions_upper") == "14457051");

  const std::string table = bounds_report_to_table(rep, nullptr);
  CHECK(table.find("482") != std::string::npos);
  CHECK(table.find("77") != std::string::npos);
}
