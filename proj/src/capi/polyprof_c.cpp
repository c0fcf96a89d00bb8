#include "polyprof.h"

#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/bounds.hpp"
#include "core/hitrun.hpp"
#include "core/network.hpp"
#include "core/profiler.hpp"
#include "core/report_io.hpp"
#include "core/vertex_enum.hpp"

using namespace polyprof;

struct pp_network {
  NetworkSpec net;
};
struct pp_system {
  HalfspaceSystem h;
};
struct pp_profile {
  NetworkProfile profile;
};
struct pp_cross_section {
  CrossSection cs;
};
struct pp_bounds {
  BoundsReport report;
};

namespace {

thread_local std::string g_last_error;

pp_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:  return PP_ERR_INVALID_ARGUMENT;
    case ErrorCode::BadArch:          return PP_ERR_BAD_ARCH;
    case ErrorCode::DimMismatch:      return PP_ERR_DIM_MISMATCH;
    case ErrorCode::ParseError:       return PP_ERR_PARSE;
    case ErrorCode::Infeasible:       return PP_ERR_INFEASIBLE;
    case ErrorCode::Unbounded:        return PP_ERR_UNBOUNDED;
    case ErrorCode::Degenerate:
    case ErrorCode::DegenerateHull:
    case ErrorCode::DegeneratePoints: return PP_ERR_DEGENERATE;
    case ErrorCode::TooLarge:         return PP_ERR_TOO_LARGE;
    case ErrorCode::NotInterior:      return PP_ERR_NOT_INTERIOR;
    case ErrorCode::EmptyProfile:     return PP_ERR_EMPTY_PROFILE;
    case ErrorCode::NumericalFailure: return PP_ERR_NUMERICAL;
    case ErrorCode::IoError:          return PP_ERR_IO;
  }
  return PP_ERR_NUMERICAL;
}

template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    fn();
    return PP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_ERR_NUMERICAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PP_ERR_NUMERICAL;
  }
}

pp_status fail(pp_status code, const char* message) {
  g_last_error = message;
  return code;
}

pp_status copy_string(const std::string& s, char* buf, size_t buf_len) {
  if (!buf || buf_len == 0) return fail(PP_ERR_INVALID_ARGUMENT, "null buffer");
  if (s.size() + 1 > buf_len)
    return fail(PP_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return PP_OK;
}

}  // namespace

extern "C" {

const char* pp_status_name(pp_status s) {
  switch (s) {
    case PP_OK:                   return "ok";
    case PP_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PP_ERR_BAD_ARCH:         return "bad-arch";
    case PP_ERR_DIM_MISMATCH:     return "dim-mismatch";
    case PP_ERR_PARSE:            return "parse-error";
    case PP_ERR_INFEASIBLE:       return "infeasible";
    case PP_ERR_UNBOUNDED:        return "unbounded";
    case PP_ERR_DEGENERATE:       return "degenerate";
    case PP_ERR_TOO_LARGE:        return "too-large";
    case PP_ERR_NOT_INTERIOR:     return "not-interior";
    case PP_ERR_EMPTY_PROFILE:    return "empty-profile";
    case PP_ERR_NUMERICAL:        return "numerical-failure";
    case PP_ERR_IO:               return "io-error";
  }
  return "unknown";
}

const char* pp_last_error(void) { return g_last_error.c_str(); }

/* ---------- networks ----------------------------------------------------- */

pp_status pp_network_init(const int32_t* widths, int32_t n_widths,
                          const char* method, double bias_value, uint64_t seed,
                          pp_network** out) {
  if (!widths || !method || !out)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    InitConfig cfg;
    cfg.method = init_method_from_string(method);
    cfg.bias_value = bias_value;
    cfg.seed = seed;
    std::vector<int> arch(widths, widths + n_widths);
    *out = new pp_network{build_initialized(arch, cfg)};
  });
}

pp_status pp_network_load(const char* path, pp_network** out) {
  if (!path || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new pp_network{load_network(path)}; });
}

pp_status pp_network_save(const pp_network* net, const char* path) {
  if (!net || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { save_network(net->net, path); });
}

void pp_network_free(pp_network* net) { delete net; }

int32_t pp_network_input_dim(const pp_network* net) {
  return net ? net->net.input_dim : 0;
}

int32_t pp_network_output_dim(const pp_network* net) {
  return net ? net->net.output_dim() : 0;
}

int32_t pp_network_hidden_neurons(const pp_network* net) {
  return net ? net->net.hidden_neuron_count() : 0;
}

pp_status pp_network_forward(const pp_network* net, const double* x,
                             double* output, uint8_t* pattern_bits) {
  if (!net || !x || !output)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const Eigen::VectorXd xin =
        Eigen::Map<const Eigen::VectorXd>(x, net->net.input_dim);
    const ForwardResult r = forward_with_pattern(net->net, xin);
    Eigen::Map<Eigen::VectorXd>(output, r.output.size()) = r.output;
    if (pattern_bits)
      std::memcpy(pattern_bits, r.pattern.bits.data(), r.pattern.bits.size());
  });
}

pp_status pp_network_first_layer_rank(const pp_network* net, double tol,
                                      int32_t* out_rank) {
  if (!net || !out_rank) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_rank = first_layer_rank(net->net, tol); });
}

/* ---------- halfspace systems -------------------------------------------- */

pp_status pp_system_create(int32_t dim, int32_t n_rows,
                           const double* normals_row_major,
                           const double* offsets, pp_system** out) {
  if (!normals_row_major || !offsets || !out)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    HalfspaceSystem h;
    h.normals.resize(n_rows, dim);
    for (int i = 0; i < n_rows; ++i)
      for (int j = 0; j < dim; ++j)
        h.normals(i, j) = normals_row_major[i * dim + j];
    h.offsets = Eigen::Map<const Eigen::VectorXd>(offsets, n_rows);
    h.validate();
    *out = new pp_system{std::move(h)};
  });
}

pp_status pp_system_load(const char* path, pp_system** out) {
  if (!path || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorCode::ParseError, std::string("system file: ") + e.what());
    }
    try {
      const int dim = doc.at("dim").get<int>();
      const auto& normals = doc.at("normals");
      const auto& offsets = doc.at("offsets");
      if (normals.size() != offsets.size())
        raise(ErrorCode::DimMismatch, "system file: row count mismatch");
      HalfspaceSystem h;
      h.normals.resize(static_cast<int>(normals.size()), dim);
      h.offsets.resize(static_cast<int>(offsets.size()));
      for (size_t i = 0; i < normals.size(); ++i) {
        if (static_cast<int>(normals[i].size()) != dim)
          raise(ErrorCode::DimMismatch, "system file: row width != dim");
        for (int j = 0; j < dim; ++j)
          h.normals(static_cast<int>(i), j) = normals[i][j].get<double>();
        h.offsets(static_cast<int>(i)) = offsets[i].get<double>();
      }
      h.validate();
      *out = new pp_system{std::move(h)};
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorCode::ParseError, std::string("system file: ") + e.what());
    }
  });
}

pp_status pp_system_region_of(const pp_network* net, const double* x,
                              double box_half, pp_system** out) {
  if (!net || !x || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const Eigen::VectorXd xin =
        Eigen::Map<const Eigen::VectorXd>(x, net->net.input_dim);
    const ForwardResult r = forward_with_pattern(net->net, xin);
    *out = new pp_system{region_halfspaces(
        net->net, r.pattern, BoundingBox{net->net.input_dim, box_half})};
  });
}

void pp_system_free(pp_system* s) { delete s; }

int32_t pp_system_dim(const pp_system* s) { return s ? s->h.dim() : 0; }
int32_t pp_system_rows(const pp_system* s) { return s ? s->h.size() : 0; }

pp_status pp_chebyshev_center(const pp_system* s, double* center,
                              double* radius) {
  if (!s || !center || !radius)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const ChebyshevCenter c = chebyshev_center(s->h);
    Eigen::Map<Eigen::VectorXd>(center, c.point.size()) = c.point;
    *radius = c.radius;
  });
}

pp_status pp_is_full_dimensional(const pp_system* s, int32_t* out_flag) {
  if (!s || !out_flag) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_flag = is_full_dimensional(s->h) ? 1 : 0; });
}

pp_status pp_nonredundant_rows(const pp_system* s, int32_t* out_idx,
                               int32_t cap, int32_t* out_count) {
  if (!s || !out_idx || !out_count)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::vector<int> idx = nonredundant_indices(s->h);
    if (static_cast<int32_t>(idx.size()) > cap)
      raise(ErrorCode::InvalidArgument, "result exceeds caller capacity");
    for (size_t i = 0; i < idx.size(); ++i) out_idx[i] = idx[i];
    *out_count = static_cast<int32_t>(idx.size());
  });
}

pp_status pp_hit_and_run(const pp_system* s, const double* x0,
                         int32_t checkpoint, uint64_t seed,
                         uint64_t max_iterations, int32_t n_chains,
                         int32_t sphere_directions, int32_t* out_idx,
                         int32_t cap, int32_t* out_count,
                         uint64_t* out_iterations) {
  if (!s || !out_idx || !out_count || !out_iterations)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    HitRunOptions opts;
    opts.checkpoint = checkpoint;
    opts.seed = seed;
    if (max_iterations > 0) opts.max_iterations = max_iterations;
    opts.sphere_directions = sphere_directions != 0;
    std::optional<Eigen::VectorXd> start;
    if (x0) start = Eigen::Map<const Eigen::VectorXd>(x0, s->h.dim());
    const HitRunResult r =
        hit_and_run_faces_chains(s->h, start, opts, std::max(1, n_chains));
    if (static_cast<int32_t>(r.found.size()) > cap)
      raise(ErrorCode::InvalidArgument, "result exceeds caller capacity");
    for (size_t i = 0; i < r.found.size(); ++i) out_idx[i] = r.found[i];
    *out_count = static_cast<int32_t>(r.found.size());
    *out_iterations = r.iterations;
  });
}

pp_status pp_estimate_region_faces(const pp_network* net, const double* x,
                                   double box_half, int32_t checkpoint,
                                   uint64_t seed, uint64_t max_iterations,
                                   int32_t* out_found, uint64_t* out_iterations,
                                   int32_t* out_total_rows) {
  if (!net || !x || !out_found || !out_iterations || !out_total_rows)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    HitRunOptions opts;
    opts.checkpoint = checkpoint;
    opts.seed = seed;
    if (max_iterations > 0) opts.max_iterations = max_iterations;
    const Eigen::VectorXd xin =
        Eigen::Map<const Eigen::VectorXd>(x, net->net.input_dim);
    const RegionFaceEstimate est = estimate_region_faces(
        net->net, xin, BoundingBox{net->net.input_dim, box_half}, opts);
    *out_found = est.found;
    *out_iterations = est.iterations;
    *out_total_rows = est.total_rows;
  });
}

/* ---------- profiling ----------------------------------------------------- */

pp_status pp_profile_run(const pp_network* net, const char* mode,
                         int32_t n_samples, uint64_t seed, double box_half,
                         int32_t exhaustive_cap, int32_t include_box_faces,
                         int32_t threads, const char* net_path_label,
                         pp_profile** out) {
  if (!net || !mode || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    EnumerationConfig cfg;
    const std::string m = mode;
    if (m == "sample") {
      cfg.mode = EnumerationConfig::Mode::Sample;
    } else if (m == "exhaustive") {
      cfg.mode = EnumerationConfig::Mode::Exhaustive;
    } else {
      raise(ErrorCode::InvalidArgument, "mode must be sample or exhaustive");
    }
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.box = BoundingBox{net->net.input_dim, box_half};
    if (exhaustive_cap > 0) cfg.exhaustive_cap = exhaustive_cap;
    NetworkProfile profile = profile_network(
        net->net, cfg, include_box_faces != 0, std::max(1, threads));
    profile.net_path = net_path_label ? net_path_label : "";
    *out = new pp_profile{std::move(profile)};
  });
}

pp_status pp_profile_load(const char* path, pp_profile** out) {
  if (!path || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new pp_profile{profile_from_json(read_text_file(path))};
  });
}

void pp_profile_free(pp_profile* p) { delete p; }

int32_t pp_profile_region_count(const pp_profile* p) {
  return p ? static_cast<int32_t>(p->profile.regions.size()) : 0;
}

int32_t pp_profile_omega(const pp_profile* p) {
  return p ? p->profile.omega : 0;
}

int64_t pp_profile_total_simplices(const pp_profile* p) {
  return p ? p->profile.total_simplices : 0;
}

int64_t pp_profile_total_faces(const pp_profile* p) {
  return p ? p->profile.total_faces : 0;
}

double pp_profile_total_volume(const pp_profile* p) {
  return p ? p->profile.total_volume : 0.0;
}

pp_status pp_profile_summary(const pp_profile* p, double* simple_fraction,
                             double* avg_faces) {
  if (!p || !simple_fraction || !avg_faces)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const Summary s = summarize(p->profile);
    *simple_fraction = s.simple_fraction;
    *avg_faces = s.avg_faces;
  });
}

pp_status pp_profile_region_stats(const pp_profile* p, int32_t index,
                                  int32_t* vertices, int32_t* faces,
                                  int32_t* simplices, double* volume) {
  if (!p) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  if (index < 0 || index >= static_cast<int32_t>(p->profile.regions.size()))
    return fail(PP_ERR_INVALID_ARGUMENT, "region index out of range");
  const RegionProfile& r = p->profile.regions[index];
  if (vertices) *vertices = r.n_vertices;
  if (faces) *faces = r.n_faces;
  if (simplices) *simplices = r.n_simplices;
  if (volume) *volume = r.volume;
  return PP_OK;
}

pp_status pp_profile_write_json(const pp_profile* p, const char* path) {
  if (!p || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { write_text_file(path, profile_to_json(p->profile)); });
}

pp_status pp_profile_write_histogram_csv(const pp_profile* p,
                                         int32_t bin_width, const char* path) {
  if (!p || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    write_text_file(path,
                    histogram_to_csv(simplex_histogram(p->profile, bin_width)));
  });
}

pp_status pp_profile_write_histogram_svg(const pp_profile* p,
                                         int32_t bin_width, const char* path) {
  if (!p || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    write_text_file(path,
                    histogram_to_svg(simplex_histogram(p->profile, bin_width)));
  });
}

/* ---------- cross-sections ------------------------------------------------ */

pp_status pp_cross_section_run(const pp_network* net, const double* p1,
                               const double* p2, double extent, uint64_t seed,
                               int32_t n_samples, int32_t cap,
                               pp_cross_section** out) {
  if (!net || !p1 || !p2 || !out)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const int d = net->net.input_dim;
    const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(p1, d);
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(p2, d);
    *out = new pp_cross_section{cross_section_regions(
        net->net, a, b, extent, seed, n_samples > 0 ? n_samples : 8000,
        cap > 0 ? cap : 24)};
  });
}

void pp_cross_section_free(pp_cross_section* cs) { delete cs; }

int32_t pp_cross_section_polygon_count(const pp_cross_section* cs) {
  return cs ? static_cast<int32_t>(cs->cs.polygons.size()) : 0;
}

pp_status pp_cross_section_write_json(const pp_cross_section* cs,
                                      const char* net_path, const char* path) {
  if (!cs || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    write_text_file(path,
                    cross_section_to_json(cs->cs, net_path ? net_path : ""));
  });
}

pp_status pp_cross_section_write_svg(const pp_cross_section* cs,
                                     const char* path) {
  if (!cs || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { write_text_file(path, cross_section_to_svg(cs->cs)); });
}

/* ---------- bounds --------------------------------------------------------- */

pp_status pp_bounds_compute(const int32_t* arch, int32_t n_widths,
                            int32_t rank, int32_t zero_bias, pp_bounds** out) {
  if (!arch || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<int> widths(arch, arch + n_widths);
    *out = new pp_bounds{
        compute_bounds_report(widths, rank, zero_bias != 0)};
  });
}

void pp_bounds_free(pp_bounds* b) { delete b; }

pp_status pp_bounds_value(const pp_bounds* b, const char* name, char* buf,
                          size_t buf_len) {
  if (!b || !name) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  const std::string* v = b->report.find(name);
  if (!v) return fail(PP_ERR_INVALID_ARGUMENT, "unknown bounds value name");
  return copy_string(*v, buf, buf_len);
}

pp_status pp_bounds_table(const pp_bounds* b,
                          const int64_t* enumerated_simplices, char* buf,
                          size_t buf_len) {
  if (!b) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  long long enumerated = 0;
  const long long* ptr = nullptr;
  if (enumerated_simplices) {
    enumerated = *enumerated_simplices;
    ptr = &enumerated;
  }
  return copy_string(bounds_report_to_table(b->report, ptr), buf, buf_len);
}

pp_status pp_bounds_write_json(const pp_bounds* b, const char* path) {
  if (!b || !path) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    write_text_file(path, bounds_report_to_json(b->report));
  });
}

/* ---------- helpers -------------------------------------------------------- */

pp_status pp_point_load(const char* path, double* buf, int32_t cap,
                        int32_t* out_dim) {
  if (!path || !buf || !out_dim)
    return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorCode::ParseError, std::string("point file: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
      raise(ErrorCode::ParseError, "point file: expected a JSON array");
    if (static_cast<int32_t>(doc.size()) > cap)
      raise(ErrorCode::InvalidArgument, "point exceeds caller capacity");
    for (size_t i = 0; i < doc.size(); ++i) {
      if (!doc[i].is_number())
        raise(ErrorCode::ParseError, "point file: non-numeric entry");
      buf[i] = doc[i].get<double>();
    }
    *out_dim = static_cast<int32_t>(doc.size());
  });
}

}  // extern "C"
