#include "profiler.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "lp.hpp"
#include "triangulate.hpp"
#include "vertex_enum.hpp"

namespace polyprof {

RegionProfile profile_region(const NetworkSpec& net,
                             const ActivationPattern& pattern,
                             const BoundingBox& box, bool include_box_faces) {
  const HalfspaceSystem h = region_halfspaces(net, pattern, box);
  const int n_neuron_rows = net.hidden_neuron_count();

  LpOptions opts;
  opts.tol = h.tol;
  const ChebyshevResult ball = chebyshev_ball(h.normals, -h.offsets, opts);
  if (!(ball.radius > h.tol))
    raise(ErrorCode::Degenerate, "profile_region: region is not full-dimensional");

  const std::vector<int> faces = nonredundant_indices(h, ball.center);
  const VertexSet verts = enumerate_vertices_trusted(h, faces);
  const SimplicialComplex tri = delaunay_triangulate(verts);

  RegionProfile rp;
  rp.pattern = pattern;
  rp.include_box_faces = include_box_faces;
  rp.n_vertices = verts.count();
  rp.n_simplices = tri.count();
  rp.volume = volume_of(tri);
  if (include_box_faces) {
    rp.n_faces = static_cast<int>(faces.size());
  } else {
    rp.n_faces = 0;
    for (int f : faces)
      if (f < n_neuron_rows) ++rp.n_faces;
  }
  return rp;
}

NetworkProfile profile_network(const NetworkSpec& net,
                               const EnumerationConfig& cfg,
                               bool include_box_faces, int threads) {
  const std::vector<ActivationPattern> patterns = enumerate_regions(net, cfg);

  NetworkProfile profile;
  profile.mode =
      cfg.mode == EnumerationConfig::Mode::Sample ? "sample" : "exhaustive";
  profile.seed = cfg.seed;
  profile.box_half = cfg.box.half_width;
  profile.n_samples =
      cfg.mode == EnumerationConfig::Mode::Sample ? cfg.n_samples : 0;
  profile.include_box_faces = include_box_faces;

  const int n = static_cast<int>(patterns.size());
  std::vector<RegionProfile> slots(n);
  std::vector<uint8_t> ok(n, 0);

  const int n_workers = std::max(1, std::min(threads, n == 0 ? 1 : n));
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        slots[i] = profile_region(net, patterns[i], cfg.box, include_box_faces);
        ok[i] = 1;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Degenerate ||
            e.code() == ErrorCode::DegenerateHull) {
          ok[i] = 0;  // sampled sliver without interior: not a region
        } else {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (int i = 0; i < n; ++i) {
    if (!ok[i]) {
      ++profile.dropped_degenerate;
      continue;
    }
    const RegionProfile& rp = slots[i];
    profile.omega = std::max(profile.omega, rp.n_simplices);
    profile.total_simplices += rp.n_simplices;
    profile.total_faces += rp.n_faces;
    profile.total_volume += rp.volume;
    profile.regions.push_back(std::move(slots[i]));
  }
  return profile;
}

Histogram simplex_histogram(const NetworkProfile& profile, int bin_width) {
  if (bin_width < 1)
    raise(ErrorCode::InvalidArgument, "histogram: bin width must be >= 1");
  Histogram h;
  h.bin_width = bin_width;
  if (profile.regions.empty()) return h;

  const int n_bins = (profile.omega + bin_width - 1) / bin_width;
  h.bins.resize(std::max(n_bins, 1));
  for (int b = 0; b < static_cast<int>(h.bins.size()); ++b) {
    h.bins[b].lo = b * bin_width + 1;
    h.bins[b].hi = (b + 1) * bin_width;
  }
  for (const RegionProfile& r : profile.regions) {
    const int b = (r.n_simplices - 1) / bin_width;
    ++h.bins[b].count;
  }
  return h;
}

Summary summarize(const NetworkProfile& profile) {
  if (profile.regions.empty())
    raise(ErrorCode::EmptyProfile, "summarize: no regions to summarize");
  Summary s;
  s.omega = profile.omega;
  const int threshold = profile.omega / 3;  // inclusive floor(omega/3)
  long long simple = 0;
  double faces = 0.0;
  for (const RegionProfile& r : profile.regions) {
    if (r.n_simplices <= threshold) ++simple;
    faces += r.n_faces;
  }
  s.simple_fraction =
      static_cast<double>(simple) / static_cast<double>(profile.regions.size());
  s.avg_faces = faces / static_cast<double>(profile.regions.size());
  return s;
}

}  // namespace polyprof
