#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "network.hpp"

namespace polyprof {

struct HitRunOptions {
  int checkpoint = 1000;        // stop after this many iterations without a find
  uint64_t seed = 0;
  uint64_t max_iterations = 50000000;
  bool sphere_directions = false;  // default: coordinate directions +-e_i
};

struct HitRunResult {
  std::vector<int> found;  // sorted row indices; every one is a true face
  uint64_t iterations = 0;
  uint64_t last_new = 0;   // iteration of the most recent discovery
};

// Monte Carlo face detection: walk random chords from a strictly interior
// point; the first-hit rows in both directions are non-redundant. The found
// set is a lower bound on the face set (the stop rule can quit early), but
// it never contains a redundant row.
//
// x0 empty -> start from the Chebyshev center. Raises NotInterior when a
// supplied start violates strict interiority.
HitRunResult hit_and_run_faces(const HalfspaceSystem& h,
                               const std::optional<Eigen::VectorXd>& x0,
                               const HitRunOptions& opts);

// Union of n_chains independent walks with seeds derived from opts.seed.
// Soundness survives the merge; coverage of small faces improves roughly
// linearly in the number of chains.
HitRunResult hit_and_run_faces_chains(const HalfspaceSystem& h,
                                      const std::optional<Eigen::VectorXd>& x0,
                                      const HitRunOptions& opts, int n_chains);

struct RegionFaceEstimate {
  int found = 0;
  uint64_t iterations = 0;
  int total_rows = 0;  // K = hidden neurons + 2d
};

// Build the region system of the pattern at x and run the walk from x
// (nudged to the Chebyshev center when x sits within tol of a boundary).
RegionFaceEstimate estimate_region_faces(const NetworkSpec& net,
                                         const Eigen::VectorXd& x,
                                         const BoundingBox& box,
                                         const HitRunOptions& opts);

}  // namespace polyprof
