#include "network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rng.hpp"

namespace polyprof {

void NetworkSpec::validate() const {
  if (input_dim < 1)
    raise(ErrorCode::BadArch, "network: input_dim must be >= 1");
  if (layers.size() < 2)
    raise(ErrorCode::BadArch, "network: need at least one hidden layer");
  int fan_in = input_dim;
  for (size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    if (layer.weights.cols() != fan_in)
      raise(ErrorCode::DimMismatch, "network: weight shape breaks the chain");
    if (layer.weights.rows() != layer.bias.size())
      raise(ErrorCode::DimMismatch, "network: bias length != layer width");
    if (layer.weights.rows() < 1)
      raise(ErrorCode::BadArch, "network: empty layer");
    if (!layer.weights.allFinite() || !layer.bias.allFinite())
      raise(ErrorCode::InvalidArgument, "network: non-finite parameters");
    const bool want_relu = l + 1 < layers.size();
    if (layer.relu != want_relu)
      raise(ErrorCode::InvalidArgument,
            "network: hidden layers must be relu, final layer linear");
    fan_in = static_cast<int>(layer.weights.rows());
  }
}

std::string ActivationPattern::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const int n = size();
  std::string out((n + 3) / 4, '0');
  for (int i = 0; i < n; i += 4) {
    int v = 0;
    for (int j = 0; j < 4 && i + j < n; ++j)
      if (bits[i + j]) v |= 1 << j;
    out[i / 4] = digits[v];
  }
  return out;
}

ActivationPattern ActivationPattern::from_hex(const std::string& hex,
                                              const std::vector<int>& offsets) {
  ActivationPattern p;
  p.layer_offsets = offsets;
  const int n = offsets.back();
  if (static_cast<int>(hex.size()) != (n + 3) / 4)
    raise(ErrorCode::ParseError, "pattern hex: wrong length");
  p.bits.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const char c = hex[i / 4];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else raise(ErrorCode::ParseError, "pattern hex: bad digit");
    p.bits[i] = (v >> (i % 4)) & 1;
  }
  return p;
}

InitMethod init_method_from_string(const std::string& name) {
  if (name == "xavier-uniform") return InitMethod::XavierUniform;
  if (name == "xavier-normal") return InitMethod::XavierNormal;
  if (name == "kaiming") return InitMethod::Kaiming;
  if (name == "orthogonal") return InitMethod::Orthogonal;
  raise(ErrorCode::InvalidArgument, "unknown init method: " + name);
}

const char* init_method_name(InitMethod m) {
  switch (m) {
    case InitMethod::XavierUniform: return "xavier-uniform";
    case InitMethod::XavierNormal: return "xavier-normal";
    case InitMethod::Kaiming: return "kaiming";
    case InitMethod::Orthogonal: return "orthogonal";
  }
  return "?";
}

namespace {

// QR-based orthogonal init: the Q factor of a Gaussian draw, sign-fixed by
// the diagonal of R, sliced to the layer's shape. Columns are orthonormal
// when fan_out >= fan_in, rows otherwise.
Eigen::MatrixXd orthogonal_matrix(int rows, int cols, Rng& rng) {
  const int big = std::max(rows, cols);
  const int small = std::min(rows, cols);
  Eigen::MatrixXd g(big, small);
  for (int i = 0; i < big; ++i)
    for (int j = 0; j < small; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(big, small);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(small);
  for (int j = 0; j < small; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return rows >= cols ? q : Eigen::MatrixXd(q.transpose());
}

}  // namespace

NetworkSpec build_initialized(const std::vector<int>& arch,
                              const InitConfig& cfg) {
  if (arch.size() < 3)
    raise(ErrorCode::BadArch, "arch needs input, >=1 hidden and output width");
  for (int w : arch)
    if (w < 1) raise(ErrorCode::BadArch, "arch widths must be >= 1");

  Rng rng(cfg.seed);
  NetworkSpec net;
  net.input_dim = arch[0];
  for (size_t l = 0; l + 1 < arch.size(); ++l) {
    const int fan_in = arch[l];
    const int fan_out = arch[l + 1];
    Layer layer;
    layer.weights.resize(fan_out, fan_in);
    switch (cfg.method) {
      case InitMethod::XavierUniform: {
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        for (int i = 0; i < fan_out; ++i)
          for (int j = 0; j < fan_in; ++j)
            layer.weights(i, j) = rng.uniform(-limit, limit);
        break;
      }
      case InitMethod::XavierNormal: {
        const double stddev = std::sqrt(2.0 / (fan_in + fan_out));
        for (int i = 0; i < fan_out; ++i)
          for (int j = 0; j < fan_in; ++j)
            layer.weights(i, j) = stddev * rng.normal();
        break;
      }
      case InitMethod::Kaiming: {
        const double stddev = std::sqrt(2.0 / fan_in);
        for (int i = 0; i < fan_out; ++i)
          for (int j = 0; j < fan_in; ++j)
            layer.weights(i, j) = stddev * rng.normal();
        break;
      }
      case InitMethod::Orthogonal:
        layer.weights = orthogonal_matrix(fan_out, fan_in, rng);
        break;
    }
    layer.bias = Eigen::VectorXd::Constant(fan_out, cfg.bias_value);
    layer.relu = l + 2 < arch.size();
    net.layers.push_back(std::move(layer));
  }
  net.validate();
  return net;
}

ForwardResult forward_with_pattern(const NetworkSpec& net,
                                   const Eigen::VectorXd& x) {
  if (x.size() != net.input_dim)
    raise(ErrorCode::DimMismatch, "forward: input has wrong dimension");
  if (!x.allFinite())
    raise(ErrorCode::InvalidArgument, "forward: non-finite input");

  ForwardResult res;
  res.pattern.layer_offsets = net.layer_offsets();
  res.pattern.bits.reserve(net.hidden_neuron_count());

  Eigen::VectorXd a = x;
  for (const Layer& layer : net.layers) {
    Eigen::VectorXd z = layer.weights * a + layer.bias;
    res.preacts.push_back(z);
    if (layer.relu) {
      for (int i = 0; i < z.size(); ++i)
        res.pattern.bits.push_back(z(i) > 0.0 ? 1 : 0);
      a = z.cwiseMax(0.0);
    } else {
      a = z;
    }
  }
  res.output = a;
  return res;
}

namespace {

// Runs the composite-coefficient recursion, invoking emit(layer, M, v) with
// the pre-masking coefficients of each hidden layer.
template <typename Emit>
AffineMap composite_walk(const NetworkSpec& net,
                         const ActivationPattern& pattern, Emit&& emit) {
  const std::vector<int> off = net.layer_offsets();
  Eigen::MatrixXd M = net.layers[0].weights;
  Eigen::VectorXd v = net.layers[0].bias;
  for (int l = 0; l < net.hidden_layer_count(); ++l) {
    emit(l, M, v);
    // mask by this layer's activations, then push through the next layer
    Eigen::MatrixXd Mm = M;
    Eigen::VectorXd vm = v;
    for (int j = 0; j < M.rows(); ++j) {
      if (!pattern.bits[off[l] + j]) {
        Mm.row(j).setZero();
        vm(j) = 0.0;
      }
    }
    const Layer& next = net.layers[l + 1];
    M = next.weights * Mm;
    v = next.weights * vm + next.bias;
  }
  return {M, v};
}

}  // namespace

HalfspaceSystem region_halfspaces(const NetworkSpec& net,
                                  const ActivationPattern& pattern,
                                  const BoundingBox& box) {
  net.validate();
  if (pattern.size() != net.hidden_neuron_count())
    raise(ErrorCode::DimMismatch, "region: pattern length != hidden neurons");
  if (box.dim != net.input_dim)
    raise(ErrorCode::DimMismatch, "region: box dimension != input_dim");

  const int n_total = net.hidden_neuron_count();
  const int d = net.input_dim;
  const std::vector<int> off = net.layer_offsets();

  HalfspaceSystem h;
  h.normals.resize(n_total + 2 * d, d);
  h.offsets.resize(n_total + 2 * d);

  composite_walk(net, pattern,
                 [&](int l, const Eigen::MatrixXd& M, const Eigen::VectorXd& v) {
                   for (int j = 0; j < M.rows(); ++j) {
                     const double s = pattern.bits[off[l] + j] ? 1.0 : -1.0;
                     h.normals.row(off[l] + j) = -s * M.row(j);
                     h.offsets(off[l] + j) = -s * v(j);
                   }
                 });

  const HalfspaceSystem box_rows = box.halfspaces();
  h.normals.bottomRows(2 * d) = box_rows.normals;
  h.offsets.tail(2 * d) = box_rows.offsets;
  return h;
}

AffineMap region_affine_map(const NetworkSpec& net,
                            const ActivationPattern& pattern) {
  if (pattern.size() != net.hidden_neuron_count())
    raise(ErrorCode::DimMismatch, "affine map: pattern length mismatch");
  return composite_walk(net, pattern, [](int, const Eigen::MatrixXd&,
                                         const Eigen::VectorXd&) {});
}

std::string network_to_json(const NetworkSpec& net) {
  net.validate();
  nlohmann::ordered_json doc;
  doc["format"] = "relu-mlp-v1";
  doc["input_dim"] = net.input_dim;
  doc["layers"] = nlohmann::ordered_json::array();
  for (const Layer& layer : net.layers) {
    nlohmann::ordered_json jl;
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < layer.weights.rows(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (int j = 0; j < layer.weights.cols(); ++j)
        row.push_back(layer.weights(i, j));
      rows.push_back(std::move(row));
    }
    jl["weights"] = std::move(rows);
    auto bias = nlohmann::ordered_json::array();
    for (int i = 0; i < layer.bias.size(); ++i) bias.push_back(layer.bias(i));
    jl["bias"] = std::move(bias);
    jl["activation"] = layer.relu ? "relu" : "linear";
    doc["layers"].push_back(std::move(jl));
  }
  return doc.dump(2);
}

NetworkSpec network_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("weights file: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "relu-mlp-v1")
      raise(ErrorCode::ParseError, "weights file: expected format relu-mlp-v1");
    NetworkSpec net;
    net.input_dim = doc.at("input_dim").get<int>();
    for (const auto& jl : doc.at("layers")) {
      Layer layer;
      const auto& rows = jl.at("weights");
      const int n_out = static_cast<int>(rows.size());
      if (n_out == 0) raise(ErrorCode::DimMismatch, "weights file: empty layer");
      const int n_in = static_cast<int>(rows[0].size());
      layer.weights.resize(n_out, n_in);
      for (int i = 0; i < n_out; ++i) {
        if (static_cast<int>(rows[i].size()) != n_in)
          raise(ErrorCode::DimMismatch, "weights file: ragged weight rows");
        for (int j = 0; j < n_in; ++j)
          layer.weights(i, j) = rows[i][j].get<double>();
      }
      const auto& bias = jl.at("bias");
      if (static_cast<int>(bias.size()) != n_out)
        raise(ErrorCode::DimMismatch, "weights file: bias length != width");
      layer.bias.resize(n_out);
      for (int i = 0; i < n_out; ++i) layer.bias(i) = bias[i].get<double>();
      const std::string act = jl.at("activation").get<std::string>();
      if (act != "relu" && act != "linear")
        raise(ErrorCode::ParseError, "weights file: unknown activation " + act);
      layer.relu = act == "relu";
      net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("weights file: ") + e.what());
  }
}

void save_network(const NetworkSpec& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot open for writing: " + path);
  out << network_to_json(net) << "\n";
  if (!out) raise(ErrorCode::IoError, "write failed: " + path);
}

NetworkSpec load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return network_from_json(buf.str());
}

int first_layer_rank(const NetworkSpec& net, double tol) {
  net.validate();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(net.layers[0].weights);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

PlaneSection restrict_to_plane(const NetworkSpec& net,
                               const Eigen::VectorXd& p1,
                               const Eigen::VectorXd& p2, uint64_t seed) {
  net.validate();
  const int d = net.input_dim;
  if (p1.size() != d || p2.size() != d)
    raise(ErrorCode::DimMismatch, "cross-section: point dimension mismatch");
  if ((p2 - p1).norm() < kActivityTol)
    raise(ErrorCode::DegeneratePoints, "cross-section: p1 == p2");

  PlaneSection sec;
  sec.origin = 0.5 * (p1 + p2);
  sec.u = (p2 - p1).normalized();

  Rng rng(seed);
  Eigen::VectorXd w(d);
  do {
    for (int i = 0; i < d; ++i) w(i) = rng.normal();
    w -= w.dot(sec.u) * sec.u;
  } while (w.norm() < 1e-8);
  sec.w = w.normalized();

  // plane coordinates (s, t): x = origin + s*u + t*w
  Eigen::MatrixXd basis(d, 2);
  basis.col(0) = sec.u;
  basis.col(1) = sec.w;

  sec.net2d = net;
  sec.net2d.input_dim = 2;
  sec.net2d.layers[0].weights = net.layers[0].weights * basis;
  sec.net2d.layers[0].bias =
      net.layers[0].weights * sec.origin + net.layers[0].bias;
  return sec;
}

}  // namespace polyprof
