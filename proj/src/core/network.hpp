#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "halfspaces.hpp"

namespace polyprof {

struct Layer {
  Eigen::MatrixXd weights;  // fan_out x fan_in
  Eigen::VectorXd bias;
  bool relu = true;  // hidden layers; the final layer is linear
};

// Fully-connected ReLU network: hidden layers ReLU, output linear.
struct NetworkSpec {
  int input_dim = 0;
  std::vector<Layer> layers;

  int hidden_layer_count() const { return static_cast<int>(layers.size()) - 1; }
  int output_dim() const { return static_cast<int>(layers.back().bias.size()); }

  // N = total hidden neurons
  int hidden_neuron_count() const {
    int n = 0;
    for (int l = 0; l < hidden_layer_count(); ++l)
      n += static_cast<int>(layers[l].bias.size());
    return n;
  }

  // offsets of each hidden layer into the flat bit sequence, plus N
  std::vector<int> layer_offsets() const {
    std::vector<int> off = {0};
    for (int l = 0; l < hidden_layer_count(); ++l)
      off.push_back(off.back() + static_cast<int>(layers[l].bias.size()));
    return off;
  }

  std::vector<int> widths() const {
    std::vector<int> w = {input_dim};
    for (const Layer& l : layers) w.push_back(static_cast<int>(l.bias.size()));
    return w;
  }

  void validate() const;
};

// One bit per hidden neuron, layer by layer: 1 iff pre-activation > 0.
// Ties z == 0 resolve to 0 so sampled boundary points get a deterministic side.
struct ActivationPattern {
  std::vector<uint8_t> bits;
  std::vector<int> layer_offsets;

  int size() const { return static_cast<int>(bits.size()); }
  bool operator==(const ActivationPattern& o) const { return bits == o.bits; }
  bool operator<(const ActivationPattern& o) const { return bits < o.bits; }

  // nibble j holds bits 4j..4j+3 with bit 4j in the low position
  std::string to_hex() const;
  static ActivationPattern from_hex(const std::string& hex,
                                    const std::vector<int>& offsets);
};

enum class InitMethod { XavierUniform, XavierNormal, Kaiming, Orthogonal };

InitMethod init_method_from_string(const std::string& name);
const char* init_method_name(InitMethod m);

struct InitConfig {
  InitMethod method = InitMethod::XavierUniform;
  double bias_value = 0.01;
  uint64_t seed = 0;
};

// Weights drawn with the MT19937-64 stream for the given seed (Box-Muller for
// normals); biases all set to bias_value. arch lists all widths including
// input and output, e.g. {3, 40, 20, 1}.
NetworkSpec build_initialized(const std::vector<int>& arch,
                              const InitConfig& cfg);

struct ForwardResult {
  Eigen::VectorXd output;
  ActivationPattern pattern;
  std::vector<Eigen::VectorXd> preacts;  // z per layer, output layer included
};

ForwardResult forward_with_pattern(const NetworkSpec& net,
                                   const Eigen::VectorXd& x);

// H-representation of the region for a pattern: one inequality per hidden
// neuron, -(2c-1)(w.x + b) <= 0 with (w, b) the pattern-masked composite
// affine coefficients of that neuron, followed by the 2d box rows.
HalfspaceSystem region_halfspaces(const NetworkSpec& net,
                                  const ActivationPattern& pattern,
                                  const BoundingBox& box);

// The single affine map the network computes on the pattern's region.
struct AffineMap {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};
AffineMap region_affine_map(const NetworkSpec& net,
                            const ActivationPattern& pattern);

// Weights file, schema relu-mlp-v1 (JSON, full double precision).
void save_network(const NetworkSpec& net, const std::string& path);
NetworkSpec load_network(const std::string& path);
std::string network_to_json(const NetworkSpec& net);
NetworkSpec network_from_json(const std::string& text);

// Numerical rank of the first-layer weight matrix: singular values above
// tol * sigma_max. Feeds the low-rank average-face bounds.
int first_layer_rank(const NetworkSpec& net, double tol);

// Network restricted to the plane through p1 and p2: coordinates (s, t) map
// to origin + s*u + t*w with u along p2-p1 and w a seeded random unit vector
// orthogonal to u; origin is the midpoint. Raises DegeneratePoints when the
// two points coincide.
struct PlaneSection {
  NetworkSpec net2d;
  Eigen::VectorXd origin, u, w;
};
PlaneSection restrict_to_plane(const NetworkSpec& net,
                               const Eigen::VectorXd& p1,
                               const Eigen::VectorXd& p2, uint64_t seed);

}  // namespace polyprof
