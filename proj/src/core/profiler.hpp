#pragma once

#include <string>
#include <vector>

#include "regions.hpp"

namespace polyprof {

struct RegionProfile {
  ActivationPattern pattern;
  int n_vertices = 0;
  int n_faces = 0;  // non-redundant inequalities; box rows optional
  int n_simplices = 0;
  double volume = 0.0;
  bool include_box_faces = true;
};

struct NetworkProfile {
  std::vector<RegionProfile> regions;  // sorted by pattern bits
  int omega = 0;                       // max n_simplices in this run
  long long total_simplices = 0;
  long long total_faces = 0;
  double total_volume = 0.0;
  int dropped_degenerate = 0;  // sampled patterns whose region had no interior

  // run metadata carried into the JSON report
  std::string net_path;
  std::string mode;
  uint64_t seed = 0;
  double box_half = 1.0;
  int n_samples = 0;
  bool include_box_faces = true;
};

// Vertex / face / simplex / volume statistics of one region
// (vertex enumeration -> Delaunay triangulation, faces by LP redundancy).
// Raises Degenerate when the pattern's region is not full-dimensional.
RegionProfile profile_region(const NetworkSpec& net,
                             const ActivationPattern& pattern,
                             const BoundingBox& box, bool include_box_faces);

// Enumerate regions (per cfg.mode), profile each exactly once in parallel,
// aggregate deterministically over the pattern-sorted order. threads <= 0
// means one worker.
NetworkProfile profile_network(const NetworkSpec& net,
                               const EnumerationConfig& cfg,
                               bool include_box_faces, int threads = 1);

struct HistogramBin {
  int lo = 0, hi = 0;
  long long count = 0;
};

struct Histogram {
  int bin_width = 5;
  std::vector<HistogramBin> bins;  // contiguous from 1
};

// Bins [1..w], [w+1..2w], ... over n_simplices; counts partition the regions.
Histogram simplex_histogram(const NetworkProfile& profile, int bin_width);

struct Summary {
  double simple_fraction = 0.0;  // share with n_simplices <= floor(omega/3)
  double avg_faces = 0.0;
  int omega = 0;
};

Summary summarize(const NetworkProfile& profile);

}  // namespace polyprof
