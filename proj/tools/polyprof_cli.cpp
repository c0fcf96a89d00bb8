// polyprof command-line tool. Talks to the library strictly through the
// public C API in polyprof.h.

#include <polyprof.h>

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

// 0 success, 2 invalid input, 3 numerical failure
int exit_code_for(pp_status s) {
  switch (s) {
    case PP_OK:
      return 0;
    case PP_ERR_INVALID_ARGUMENT:
    case PP_ERR_BAD_ARCH:
    case PP_ERR_DIM_MISMATCH:
    case PP_ERR_PARSE:
    case PP_ERR_TOO_LARGE:
    case PP_ERR_IO:
      return 2;
    default:
      return 3;
  }
}

int report(pp_status s) {
  if (s != PP_OK)
    std::cerr << "error (" << pp_status_name(s) << "): " << pp_last_error()
              << "\n";
  return exit_code_for(s);
}

bool parse_arch(const std::string& text, std::vector<int32_t>& out) {
  out.clear();
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t dash = text.find('-', pos);
    const std::string tok = text.substr(pos, dash == std::string::npos
                                                 ? std::string::npos
                                                 : dash - pos);
    if (tok.empty()) return false;
    try {
      size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) return false;
      out.push_back(v);
    } catch (...) {
      return false;
    }
    if (dash == std::string::npos) break;
    pos = dash + 1;
  }
  return out.size() >= 2;
}

int effective_threads(int flag_value) {
  if (const char* env = std::getenv("POLYPROF_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  return flag_value;
}

struct NetworkHandle {
  pp_network* ptr = nullptr;
  ~NetworkHandle() { pp_network_free(ptr); }
};
struct SystemHandle {
  pp_system* ptr = nullptr;
  ~SystemHandle() { pp_system_free(ptr); }
};
struct ProfileHandle {
  pp_profile* ptr = nullptr;
  ~ProfileHandle() { pp_profile_free(ptr); }
};
struct BoundsHandle {
  pp_bounds* ptr = nullptr;
  ~BoundsHandle() { pp_bounds_free(ptr); }
};
struct SectionHandle {
  pp_cross_section* ptr = nullptr;
  ~SectionHandle() { pp_cross_section_free(ptr); }
};

int cmd_init(const std::string& arch_text, const std::string& method,
             double bias, uint64_t seed, const std::string& out_path) {
  std::vector<int32_t> arch;
  if (!parse_arch(arch_text, arch)) {
    std::cerr << "error: bad --arch (expected dash-separated widths)\n";
    return 2;
  }
  NetworkHandle net;
  pp_status s = pp_network_init(arch.data(), static_cast<int32_t>(arch.size()),
                                method.c_str(), bias, seed, &net.ptr);
  if (s != PP_OK) return report(s);
  s = pp_network_save(net.ptr, out_path.c_str());
  if (s != PP_OK) return report(s);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_profile(const std::string& net_path, const std::string& mode,
                double box, int samples, uint64_t seed, int cap,
                bool exclude_box_faces, int threads,
                const std::string& out_path, const std::string& hist_path,
                int bin_width, const std::string& hist_svg_path) {
  NetworkHandle net;
  pp_status s = pp_network_load(net_path.c_str(), &net.ptr);
  if (s != PP_OK) return report(s);

  ProfileHandle profile;
  s = pp_profile_run(net.ptr, mode.c_str(), samples, seed, box, cap,
                     exclude_box_faces ? 0 : 1, effective_threads(threads),
                     net_path.c_str(), &profile.ptr);
  if (s != PP_OK) return report(s);

  if (!out_path.empty()) {
    s = pp_profile_write_json(profile.ptr, out_path.c_str());
    if (s != PP_OK) return report(s);
  }
  if (!hist_path.empty()) {
    s = pp_profile_write_histogram_csv(profile.ptr, bin_width,
                                       hist_path.c_str());
    if (s != PP_OK) return report(s);
  }
  if (!hist_svg_path.empty()) {
    s = pp_profile_write_histogram_svg(profile.ptr, bin_width,
                                       hist_svg_path.c_str());
    if (s != PP_OK) return report(s);
  }

  double simple_fraction = 0.0, avg_faces = 0.0;
  s = pp_profile_summary(profile.ptr, &simple_fraction, &avg_faces);
  if (s != PP_OK) return report(s);
  std::cout << "regions=" << pp_profile_region_count(profile.ptr)
            << " omega=" << pp_profile_omega(profile.ptr)
            << " simple_fraction=" << simple_fraction
            << " avg_faces=" << avg_faces << "\n";
  return 0;
}

int cmd_bounds(const std::string& arch_text, int rank, bool zero_bias,
               const std::string& profile_path, const std::string& json_path) {
  std::vector<int32_t> arch;
  if (!parse_arch(arch_text, arch) || arch.size() < 3) {
    std::cerr << "error: bad --arch (expected dash-separated widths)\n";
    return 2;
  }
  BoundsHandle bounds;
  pp_status s = pp_bounds_compute(arch.data(), static_cast<int32_t>(arch.size()),
                                  rank, zero_bias ? 1 : 0, &bounds.ptr);
  if (s != PP_OK) return report(s);

  int64_t enumerated = 0;
  const int64_t* enumerated_ptr = nullptr;
  if (!profile_path.empty()) {
    ProfileHandle profile;
    s = pp_profile_load(profile_path.c_str(), &profile.ptr);
    if (s != PP_OK) return report(s);
    enumerated = pp_profile_total_simplices(profile.ptr);
    enumerated_ptr = &enumerated;
  }

  std::vector<char> buf(1 << 16);
  s = pp_bounds_table(bounds.ptr, enumerated_ptr, buf.data(), buf.size());
  if (s != PP_OK) return report(s);
  std::cout << buf.data();

  if (!json_path.empty()) {
    s = pp_bounds_write_json(bounds.ptr, json_path.c_str());
    if (s != PP_OK) return report(s);
  }
  return 0;
}

int cmd_hitrun(const std::string& net_path, const std::string& system_path,
               const std::string& point_path, double box, int checkpoint,
               uint64_t seed, uint64_t max_iters, int chains, bool sphere) {
  if (net_path.empty() == system_path.empty()) {
    std::cerr << "error: pass exactly one of --net or --system\n";
    return 2;
  }

  std::vector<double> point;
  int32_t point_dim = 0;
  if (!point_path.empty()) {
    point.resize(4096);
    const pp_status s = pp_point_load(point_path.c_str(), point.data(),
                                      static_cast<int32_t>(point.size()),
                                      &point_dim);
    if (s != PP_OK) return report(s);
    point.resize(point_dim);
  }

  if (!net_path.empty()) {
    NetworkHandle net;
    pp_status s = pp_network_load(net_path.c_str(), &net.ptr);
    if (s != PP_OK) return report(s);
    if (point_dim != pp_network_input_dim(net.ptr)) {
      std::cerr << "error: --point is required with --net and must match the "
                   "input dimension\n";
      return 2;
    }
    int32_t found = 0, total = 0;
    uint64_t iterations = 0;
    s = pp_estimate_region_faces(net.ptr, point.data(), box, checkpoint, seed,
                                 max_iters, &found, &iterations, &total);
    if (s != PP_OK) return report(s);
    std::cout << "found=" << found << " of K=" << total
              << " iterations=" << iterations << "\n";
    return 0;
  }

  SystemHandle sys;
  pp_status s = pp_system_load(system_path.c_str(), &sys.ptr);
  if (s != PP_OK) return report(s);
  if (point_dim != 0 && point_dim != pp_system_dim(sys.ptr)) {
    std::cerr << "error: --point dimension does not match the system\n";
    return 2;
  }
  const int32_t rows = pp_system_rows(sys.ptr);
  std::vector<int32_t> found_idx(rows);
  int32_t found = 0;
  uint64_t iterations = 0;
  s = pp_hit_and_run(sys.ptr, point_dim ? point.data() : nullptr, checkpoint,
                     seed, max_iters, chains, sphere ? 1 : 0, found_idx.data(),
                     rows, &found, &iterations);
  if (s != PP_OK) return report(s);
  std::cout << "found=" << found << " of K=" << rows
            << " iterations=" << iterations << "\n";
  return 0;
}

int cmd_cross_section(const std::string& net_path, const std::string& p1_path,
                      const std::string& p2_path, double extent, uint64_t seed,
                      int samples, int cap, const std::string& out_path,
                      const std::string& svg_path) {
  NetworkHandle net;
  pp_status s = pp_network_load(net_path.c_str(), &net.ptr);
  if (s != PP_OK) return report(s);
  const int32_t d = pp_network_input_dim(net.ptr);

  std::vector<double> p1(d), p2(d);
  int32_t d1 = 0, d2 = 0;
  s = pp_point_load(p1_path.c_str(), p1.data(), d, &d1);
  if (s != PP_OK) return report(s);
  s = pp_point_load(p2_path.c_str(), p2.data(), d, &d2);
  if (s != PP_OK) return report(s);
  if (d1 != d || d2 != d) {
    std::cerr << "error: point dimensions must match the network input\n";
    return 2;
  }

  SectionHandle cs;
  s = pp_cross_section_run(net.ptr, p1.data(), p2.data(), extent, seed,
                           samples, cap, &cs.ptr);
  if (s != PP_OK) return report(s);

  if (!out_path.empty()) {
    s = pp_cross_section_write_json(cs.ptr, net_path.c_str(), out_path.c_str());
    if (s != PP_OK) return report(s);
  }
  if (!svg_path.empty()) {
    s = pp_cross_section_write_svg(cs.ptr, svg_path.c_str());
    if (s != PP_OK) return report(s);
  }
  std::cout << "polygons=" << pp_cross_section_polygon_count(cs.ptr) << "\n";
  return 0;
}

int cmd_histogram(const std::string& profile_path, int bin_width,
                  const std::string& out_path, const std::string& svg_path) {
  ProfileHandle profile;
  pp_status s = pp_profile_load(profile_path.c_str(), &profile.ptr);
  if (s != PP_OK) return report(s);
  if (!out_path.empty()) {
    s = pp_profile_write_histogram_csv(profile.ptr, bin_width,
                                       out_path.c_str());
    if (s != PP_OK) return report(s);
  }
  if (!svg_path.empty()) {
    s = pp_profile_write_histogram_svg(profile.ptr, bin_width,
                                       svg_path.c_str());
    if (s != PP_OK) return report(s);
  }
  std::cout << "regions=" << pp_profile_region_count(profile.ptr)
            << " omega=" << pp_profile_omega(profile.ptr) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyprof: linear-region profiling of ReLU networks"};
  app.require_subcommand(1);

  // init
  std::string arch_text, method = "xavier-uniform", out_path;
  double bias = 0.01;
  uint64_t seed = 0;
  auto* init = app.add_subcommand("init", "initialize a network weights file");
  init->add_option("--arch", arch_text, "widths, e.g. 3-40-20-1")->required();
  init->add_option("--method", method,
                   "xavier-uniform|xavier-normal|kaiming|orthogonal");
  init->add_option("--bias", bias, "bias value for every neuron");
  init->add_option("--seed", seed, "rng seed");
  init->add_option("--out", out_path, "output weights file")->required();

  // profile
  std::string net_path, mode = "sample", profile_out, hist_path, hist_svg;
  double box = 1.0;
  int samples = 8000, bin_width = 5, threads = 1, cap = 0;
  bool exclude_box_faces = false;
  auto* profile = app.add_subcommand("profile", "profile region shapes");
  profile->add_option("--net", net_path, "weights file")->required();
  profile->add_option("--mode", mode, "sample|exhaustive");
  profile->add_option("--box", box, "bounding box half-width B");
  profile->add_option("--samples", samples, "sample count");
  profile->add_option("--seed", seed, "rng seed");
  profile->add_option("--cap", cap, "exhaustive neuron cap");
  profile->add_flag("--exclude-box-faces", exclude_box_faces,
                    "do not count bounding-box facets as faces");
  profile->add_option("--threads", threads,
                      "worker threads (POLYPROF_THREADS overrides)");
  profile->add_option("--out", profile_out, "profile JSON path");
  profile->add_option("--hist", hist_path, "histogram CSV path");
  profile->add_option("--bin-width", bin_width, "histogram bin width");
  profile->add_option("--hist-svg", hist_svg, "histogram SVG path");

  // bounds
  std::string bounds_arch, bounds_profile, bounds_json;
  int rank = -1;
  bool zero_bias = false;
  auto* bounds = app.add_subcommand("bounds", "closed-form bound table");
  bounds->add_option("--arch", bounds_arch, "widths, e.g. 3-7-1")->required();
  bounds->add_option("--rank", rank, "first-layer rank d0 for low-rank rows");
  bounds->add_flag("--zero-bias", zero_bias, "include central-arrangement rows");
  bounds->add_option("--profile", bounds_profile,
                     "profile JSON for the enumerated row");
  bounds->add_option("--json", bounds_json, "also write the report as JSON");

  // hitrun
  std::string hr_net, hr_system, hr_point;
  int checkpoint = 1000, chains = 1;
  uint64_t max_iters = 0;
  bool sphere = false;
  auto* hitrun = app.add_subcommand("hitrun", "hit-and-run face detection");
  hitrun->add_option("--net", hr_net, "weights file (with --point)");
  hitrun->add_option("--system", hr_system, "halfspace system JSON");
  hitrun->add_option("--point", hr_point, "JSON array; start / region point");
  hitrun->add_option("--box", box, "bounding box half-width (with --net)");
  hitrun->add_option("--checkpoint", checkpoint, "stall window");
  hitrun->add_option("--seed", seed, "rng seed");
  hitrun->add_option("--max-iters", max_iters, "iteration cap (0 = default)");
  hitrun->add_option("--chains", chains, "independent chains merged by union");
  hitrun->add_flag("--sphere", sphere, "uniform sphere directions");

  // cross-section
  std::string cs_net, cs_p1, cs_p2, cs_out, cs_svg;
  double extent = 1.0;
  int cs_samples = 8000, cs_cap = 24;
  auto* cross = app.add_subcommand("cross-section",
                                   "2D region map through two points");
  cross->add_option("--net", cs_net, "weights file")->required();
  cross->add_option("--p1", cs_p1, "JSON array point file")->required();
  cross->add_option("--p2", cs_p2, "JSON array point file")->required();
  cross->add_option("--extent", extent, "plane half-width");
  cross->add_option("--seed", seed, "rng seed");
  cross->add_option("--samples", cs_samples, "sample count (large sections)");
  cross->add_option("--cap", cs_cap, "exhaustive neuron cap");
  cross->add_option("--out", cs_out, "polygon JSON path");
  cross->add_option("--svg", cs_svg, "region map SVG path");

  // histogram
  std::string hist_profile, hist_out, hist_svg_out;
  auto* histogram =
      app.add_subcommand("histogram", "histogram from a profile JSON");
  histogram->add_option("--profile", hist_profile, "profile JSON")->required();
  histogram->add_option("--bin-width", bin_width, "bin width");
  histogram->add_option("--out", hist_out, "CSV path");
  histogram->add_option("--svg", hist_svg_out, "SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (init->parsed())
    return cmd_init(arch_text, method, bias, seed, out_path);
  if (profile->parsed())
    return cmd_profile(net_path, mode, box, samples, seed, cap,
                       exclude_box_faces, threads, profile_out, hist_path,
                       bin_width, hist_svg);
  if (bounds->parsed())
    return cmd_bounds(bounds_arch, rank, zero_bias, bounds_profile,
                      bounds_json);
  if (hitrun->parsed())
    return cmd_hitrun(hr_net, hr_system, hr_point, box, checkpoint, seed,
                      max_iters, chains, sphere);
  if (cross->parsed())
    return cmd_cross_section(cs_net, cs_p1, cs_p2, extent, seed, cs_samples,
                             cs_cap, cs_out, cs_svg);
  if (histogram->parsed())
    return cmd_histogram(hist_profile, bin_width, hist_out, hist_svg_out);
  return 2;
}
