#pragma once

#include <cstdint>
#include <vector>

#include "network.hpp"

namespace polyprof {

struct EnumerationConfig {
  enum class Mode { Sample, Exhaustive };
  Mode mode = Mode::Sample;
  int n_samples = 8000;
  uint64_t seed = 0;
  BoundingBox box{0, 1.0};
  int exhaustive_cap = 24;
};

// Distinct activation patterns hit by n_samples uniform points in the box.
// Sample i is a pure function of (seed, i), so the result is independent of
// worker scheduling and prefixes are stable as n_samples grows. A lower
// bound on the true region count.
std::vector<ActivationPattern> sample_regions(const NetworkSpec& net,
                                              const EnumerationConfig& cfg);

// Exactly the patterns whose region is full-dimensional inside the box,
// found by a bit-by-bit search: a pattern prefix with an infeasible (or
// lower-dimensional) system prunes all completions. Raises TooLarge when the
// network has more than cfg.exhaustive_cap hidden neurons.
std::vector<ActivationPattern> exhaustive_regions(const NetworkSpec& net,
                                                  const EnumerationConfig& cfg);

// Dispatch on cfg.mode; both paths return patterns sorted by bit sequence.
std::vector<ActivationPattern> enumerate_regions(const NetworkSpec& net,
                                                 const EnumerationConfig& cfg);

// One region of a 2D cross-section, with its boundary polygon in plane
// coordinates (counter-clockwise).
struct SectionPolygon {
  ActivationPattern pattern;
  Eigen::MatrixXd polygon;  // ordered vertex rows (s, t)
  int edges = 0;
  double area = 0.0;
};

struct CrossSection {
  PlaneSection plane;
  double extent = 1.0;
  uint64_t seed = 0;
  std::string mode;
  std::vector<SectionPolygon> polygons;
};

// Regions of the network restricted to the plane through p1 and p2 over
// (s, t) in [-extent, extent]^2. Uses exhaustive enumeration when the hidden
// neuron count fits under cap, sampling otherwise.
CrossSection cross_section_regions(const NetworkSpec& net,
                                   const Eigen::VectorXd& p1,
                                   const Eigen::VectorXd& p2, double extent,
                                   uint64_t seed, int n_samples = 8000,
                                   int cap = 24);

}  // namespace polyprof
