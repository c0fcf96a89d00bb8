#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace polyprof {

using BigInt = boost::multiprecision::cpp_int;

// exact C(n, k); zero outside 0 <= k <= n
BigInt binomial(long n, long k);

// region count bound of an arrangement of m hyperplanes in R^n:
// sum_{i=0..n} C(m, i); equality in general position
BigInt zaslavsky_regions(long m, long n);

// exact region count for a central arrangement with independent normals:
// C(m-1, n-1) + sum_{i=0..n-1} C(m, i)
BigInt central_regions(long m, long n);

// one hidden layer, d inputs, n neurons:
// upper: 2n sum_{i<d} C(n-1, i) + 2d sum_{i<d} C(n, i)
// lower: floor( 2n/(d+1) * sum_{i<d} C(n-1, i) )
BigInt one_layer_simplices_upper(long d, long n);
BigInt one_layer_simplices_lower(long d, long n);

struct MultilayerSimplexBounds {
  BigInt upper;   // face recursion over layers
  BigInt lower;   // region count proxy: floor(n/d)^{d(L-1)} sum_{j<=d} C(n,j)
  double leading_term = 0.0;  // 2 n^{dL} / ((d-1)! (d!)^{L-1})
};

// L hidden layers of n neurons each. L = 1 reduces the upper bound exactly
// to the one-layer formula; the lower bound is the region-count form (the
// one-layer floor bound is reported separately where tighter).
MultilayerSimplexBounds multilayer_simplices_bounds(long d, long n, long L);

// same recursion with per-layer widths (equal widths reproduce the above)
MultilayerSimplexBounds multilayer_simplices_bounds_widths(
    long d, const std::vector<long>& hidden_widths);

// product bound on the region count: prod_i sum_{j<=m_i} C(n_i, j) with
// m_i = min{d, n_1, ..., n_i}
BigInt multilayer_regions_upper(long d, const std::vector<long>& hidden_widths);

enum class AvgFaceSetting {
  OneLayer,          // 2d + 1
  MultilayerD2,      // 4
  ZeroBias,          // 3d - 1
  LowRankMultilayer, // 2 d0 + d - 1
  LowRankOneLayer,   // 2 d0 + 1
};

long avg_face_bound(AvgFaceSetting setting, long d, long d0 = 0);

// total parameters: sum over consecutive width pairs of n_out * n_in + n_out
BigInt param_count(const std::vector<long>& widths);

// Every closed-form value for one architecture, as ordered (name, decimal)
// pairs; rank < 0 skips the low-rank rows.
struct BoundsReport {
  std::vector<int> arch;
  int rank = -1;
  bool zero_bias = false;
  std::vector<std::pair<std::string, std::string>> values;

  const std::string* find(const std::string& name) const {
    for (const auto& [k, v] : values)
      if (k == name) return &v;
    return nullptr;
  }
};

BoundsReport compute_bounds_report(const std::vector<int>& arch, int rank,
                                   bool zero_bias);

}  // namespace polyprof
