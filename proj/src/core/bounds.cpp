#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polyprof {

BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;  // exact at every step
  }
  return result;
}

BigInt zaslavsky_regions(long m, long n) {
  if (m < 0 || n < 0)
    raise(ErrorCode::InvalidArgument, "zaslavsky_regions: need m, n >= 0");
  BigInt sum = 0;
  for (long i = 0; i <= n; ++i) sum += binomial(m, i);
  return sum;
}

BigInt central_regions(long m, long n) {
  if (m < 1 || n < 1)
    raise(ErrorCode::InvalidArgument, "central_regions: need m, n >= 1");
  BigInt sum = binomial(m - 1, n - 1);
  for (long i = 0; i <= n - 1; ++i) sum += binomial(m, i);
  return sum;
}

namespace {

BigInt sum_binomials(long m, long upto) {
  BigInt sum = 0;
  for (long i = 0; i <= upto; ++i) sum += binomial(m, i);
  return sum;
}

void check_dn(long d, long n) {
  if (d < 1 || n < 1)
    raise(ErrorCode::InvalidArgument, "simplex bounds: need d, n >= 1");
}

}  // namespace

BigInt one_layer_simplices_upper(long d, long n) {
  check_dn(d, n);
  return 2 * n * sum_binomials(n - 1, d - 1) + 2 * d * sum_binomials(n, d - 1);
}

BigInt one_layer_simplices_lower(long d, long n) {
  check_dn(d, n);
  return 2 * n * sum_binomials(n - 1, d - 1) / (d + 1);  // floor division
}

MultilayerSimplexBounds multilayer_simplices_bounds_widths(
    long d, const std::vector<long>& widths) {
  if (widths.empty())
    raise(ErrorCode::InvalidArgument, "simplex bounds: no hidden layers");
  for (long n : widths) check_dn(d, n);
  const long L = static_cast<long>(widths.size());

  MultilayerSimplexBounds out;

  // face recursion: adding layer l to a network with R regions and F faces
  // gives at most 2n sum C(n-1,i) * R + sum C(n,i) * F faces
  BigInt faces = one_layer_simplices_upper(d, widths[0]);
  BigInt regions = 1;
  long m_running = d;
  for (long l = 0; l < L; ++l) {
    m_running = std::min(m_running, widths[l]);
    if (l > 0) {
      const long n = widths[l];
      faces = 2 * n * sum_binomials(n - 1, d - 1) * regions +
              sum_binomials(n, d - 1) * faces;
    }
    regions *= sum_binomials(widths[l], std::min(m_running, d));
  }
  out.upper = faces;

  // region-count lower bound: prod_{l<L} floor(n_l/d)^d * sum_{j<=d} C(n_L,j)
  BigInt lower = 1;
  for (long l = 0; l + 1 < L; ++l) {
    BigInt f = widths[l] / d;
    for (long p = 0; p < d; ++p) lower *= f;
  }
  lower *= sum_binomials(widths.back(), d);
  out.lower = lower;

  // leading term of the equal-width asymptotic
  const long n_lead = widths[0];
  double lead = 2.0 * std::pow(static_cast<double>(n_lead),
                               static_cast<double>(d) * L);
  for (long i = 1; i <= d - 1; ++i) lead /= i;
  double dfact = 1.0;
  for (long i = 2; i <= d; ++i) dfact *= i;
  lead /= std::pow(dfact, static_cast<double>(L - 1));
  out.leading_term = lead;

  return out;
}

MultilayerSimplexBounds multilayer_simplices_bounds(long d, long n, long L) {
  if (L < 1)
    raise(ErrorCode::InvalidArgument, "simplex bounds: need L >= 1");
  return multilayer_simplices_bounds_widths(d, std::vector<long>(L, n));
}

BigInt multilayer_regions_upper(long d, const std::vector<long>& widths) {
  if (widths.empty())
    raise(ErrorCode::InvalidArgument, "regions bound: no hidden layers");
  BigInt prod = 1;
  long m_running = d;
  for (long n : widths) {
    check_dn(d, n);
    m_running = std::min(m_running, n);
    prod *= sum_binomials(n, m_running);
  }
  return prod;
}

long avg_face_bound(AvgFaceSetting setting, long d, long d0) {
  switch (setting) {
    case AvgFaceSetting::OneLayer:
      if (d < 1) raise(ErrorCode::InvalidArgument, "avg faces: d >= 1");
      return 2 * d + 1;
    case AvgFaceSetting::MultilayerD2:
      return 4;
    case AvgFaceSetting::ZeroBias:
      if (d < 1) raise(ErrorCode::InvalidArgument, "avg faces: d >= 1");
      return 3 * d - 1;
    case AvgFaceSetting::LowRankMultilayer:
      if (d < 1 || d0 < 1 || d0 > d)
        raise(ErrorCode::InvalidArgument, "avg faces: need 1 <= d0 <= d");
      return 2 * d0 + d - 1;
    case AvgFaceSetting::LowRankOneLayer:
      if (d0 < 1) raise(ErrorCode::InvalidArgument, "avg faces: d0 >= 1");
      return 2 * d0 + 1;
  }
  raise(ErrorCode::InvalidArgument, "avg faces: unknown setting");
}

BigInt param_count(const std::vector<long>& widths) {
  if (widths.size() < 2)
    raise(ErrorCode::InvalidArgument, "param_count: need at least 2 widths");
  BigInt total = 0;
  for (size_t l = 0; l + 1 < widths.size(); ++l)
    total += BigInt(widths[l + 1]) * widths[l] + widths[l + 1];
  return total;
}

BoundsReport compute_bounds_report(const std::vector<int>& arch, int rank,
                                   bool zero_bias) {
  if (arch.size() < 3)
    raise(ErrorCode::InvalidArgument,
          "bounds report: arch needs input, hidden and output widths");
  for (int w : arch)
    if (w < 1) raise(ErrorCode::InvalidArgument, "bounds report: widths >= 1");

  const long d = arch[0];
  std::vector<long> hidden(arch.begin() + 1, arch.end() - 1);
  const long L = static_cast<long>(hidden.size());
  const bool equal_widths =
      std::all_of(hidden.begin(), hidden.end(),
                  [&](long n) { return n == hidden[0]; });

  BoundsReport rep;
  rep.arch = arch;
  rep.rank = rank;
  rep.zero_bias = zero_bias;

  auto put = [&](const std::string& name, const BigInt& v) {
    std::ostringstream os;
    os << v;
    rep.values.emplace_back(name, os.str());
  };
  auto put_long = [&](const std::string& name, long v) {
    rep.values.emplace_back(name, std::to_string(v));
  };

  std::vector<long> all_widths(arch.begin(), arch.end());
  put("params", param_count(all_widths));

  const auto ml = multilayer_simplices_bounds_widths(d, hidden);
  put("simplices_upper", ml.upper);
  if (L == 1) put("simplices_lower", one_layer_simplices_lower(d, hidden[0]));
  put("regions_as_simplices_lower", ml.lower);
  if (equal_widths) {
    std::ostringstream os;
    os << ml.leading_term;
    rep.values.emplace_back("simplices_upper_leading_term", os.str());
  }

  put("regions_upper", multilayer_regions_upper(d, hidden));
  if (L == 1) {
    put("regions_general_position", zaslavsky_regions(hidden[0], d));
    if (zero_bias) put("regions_central", central_regions(hidden[0], d));
  }

  if (L == 1) put_long("avg_faces_bound_one_layer",
                       avg_face_bound(AvgFaceSetting::OneLayer, d));
  if (d == 2 && L > 1)
    put_long("avg_faces_bound_multilayer_d2",
             avg_face_bound(AvgFaceSetting::MultilayerD2, d));
  if (zero_bias)
    put_long("avg_faces_bound_zero_bias",
             avg_face_bound(AvgFaceSetting::ZeroBias, d));
  if (rank >= 1) {
    put_long("avg_faces_bound_lowrank_multilayer",
             avg_face_bound(AvgFaceSetting::LowRankMultilayer, d, rank));
    if (L == 1)
      put_long("avg_faces_bound_lowrank_one_layer",
               avg_face_bound(AvgFaceSetting::LowRankOneLayer, d, rank));
  }
  return rep;
}

}  // namespace polyprof
