#include "report_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rng.hpp"

namespace polyprof {

using nlohmann::json;
using nlohmann::ordered_json;

std::string profile_to_json(const NetworkProfile& profile) {
  ordered_json doc;
  doc["net"] = profile.net_path;
  doc["box"] = profile.box_half;
  doc["mode"] = profile.mode;
  doc["seed"] = profile.seed;
  doc["n_samples"] = profile.n_samples;
  doc["include_box_faces"] = profile.include_box_faces;
  auto regions = ordered_json::array();
  for (const RegionProfile& r : profile.regions) {
    ordered_json jr;
    jr["pattern"] = r.pattern.to_hex();
    jr["vertices"] = r.n_vertices;
    jr["faces"] = r.n_faces;
    jr["simplices"] = r.n_simplices;
    jr["volume"] = r.volume;
    regions.push_back(std::move(jr));
  }
  doc["regions"] = std::move(regions);
  doc["omega"] = profile.omega;
  if (!profile.regions.empty()) {
    const Summary s = summarize(profile);
    doc["simple_fraction"] = s.simple_fraction;
    doc["avg_faces"] = s.avg_faces;
  } else {
    doc["simple_fraction"] = 0.0;
    doc["avg_faces"] = 0.0;
  }
  return doc.dump(2);
}

NetworkProfile profile_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("profile file: ") + e.what());
  }
  try {
    NetworkProfile p;
    p.net_path = doc.value("net", "");
    p.box_half = doc.value("box", 1.0);
    p.mode = doc.value("mode", "sample");
    p.seed = doc.value("seed", 0ull);
    p.n_samples = doc.value("n_samples", 0);
    p.include_box_faces = doc.value("include_box_faces", true);
    for (const auto& jr : doc.at("regions")) {
      RegionProfile r;
      const std::string hex = jr.at("pattern").get<std::string>();
      r.pattern.bits.reserve(hex.size() * 4);
      // offsets are not in the report; reconstruct a single flat block
      r.pattern = ActivationPattern::from_hex(
          hex, {0, static_cast<int>(hex.size() * 4)});
      r.n_vertices = jr.at("vertices").get<int>();
      r.n_faces = jr.at("faces").get<int>();
      r.n_simplices = jr.at("simplices").get<int>();
      r.volume = jr.at("volume").get<double>();
      r.include_box_faces = p.include_box_faces;
      p.omega = std::max(p.omega, r.n_simplices);
      p.total_simplices += r.n_simplices;
      p.total_faces += r.n_faces;
      p.total_volume += r.volume;
      p.regions.push_back(std::move(r));
    }
    return p;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("profile file: ") + e.what());
  }
}

std::string histogram_to_csv(const Histogram& h) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,count\n";
  for (const HistogramBin& b : h.bins)
    os << b.lo << "," << b.hi << "," << b.count << "\n";
  return os.str();
}

std::string histogram_to_svg(const Histogram& h) {
  const int width = 640, height = 400, margin = 48;
  long long max_count = 1;
  for (const HistogramBin& b : h.bins) max_count = std::max(max_count, b.count);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const int n = std::max<int>(1, static_cast<int>(h.bins.size()));
  const double bar_w = static_cast<double>(width - 2 * margin) / n;
  for (size_t i = 0; i < h.bins.size(); ++i) {
    const double frac =
        static_cast<double>(h.bins[i].count) / static_cast<double>(max_count);
    const double bh = frac * (height - 2 * margin);
    os << "<rect x=\"" << margin + i * bar_w << "\" y=\""
       << height - margin - bh << "\" width=\"" << bar_w * 0.9
       << "\" height=\"" << bh << "\" fill=\"#4878a8\"/>\n";
    os << "<text x=\"" << margin + i * bar_w + bar_w * 0.45 << "\" y=\""
       << height - margin + 14 << "\" font-size=\"9\" text-anchor=\"middle\">"
       << h.bins[i].lo << "-" << h.bins[i].hi << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
     << "\" font-size=\"11\" text-anchor=\"middle\">simplices per region"
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string cross_section_to_svg(const CrossSection& cs) {
  const int size = 640, margin = 16;
  const double scale = (size - 2 * margin) / (2.0 * cs.extent);

  auto sx = [&](double s) { return margin + (s + cs.extent) * scale; };
  auto sy = [&](double t) { return size - margin - (t + cs.extent) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
     << "\" height=\"" << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const SectionPolygon& poly : cs.polygons) {
    uint64_t hash = 0xcbf29ce484222325ull;
    for (uint8_t b : poly.pattern.bits) hash = (hash ^ b) * 0x100000001b3ull;
    const int hue = static_cast<int>(hash % 360);
    os << "<polygon points=\"";
    for (int i = 0; i < poly.polygon.rows(); ++i)
      os << sx(poly.polygon(i, 0)) << "," << sy(poly.polygon(i, 1)) << " ";
    os << "\" fill=\"hsl(" << hue
       << ",55%,75%)\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string cross_section_to_json(const CrossSection& cs,
                                  const std::string& net_path) {
  ordered_json doc;
  doc["net"] = net_path;
  doc["extent"] = cs.extent;
  doc["seed"] = cs.seed;
  doc["mode"] = cs.mode;
  auto vec = [](const Eigen::VectorXd& v) {
    auto a = ordered_json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
  };
  doc["origin"] = vec(cs.plane.origin);
  doc["u"] = vec(cs.plane.u);
  doc["w"] = vec(cs.plane.w);
  auto regions = ordered_json::array();
  for (const SectionPolygon& p : cs.polygons) {
    ordered_json jr;
    jr["pattern"] = p.pattern.to_hex();
    jr["edges"] = p.edges;
    jr["area"] = p.area;
    auto poly = ordered_json::array();
    for (int i = 0; i < p.polygon.rows(); ++i)
      poly.push_back(ordered_json::array({p.polygon(i, 0), p.polygon(i, 1)}));
    jr["polygon"] = std::move(poly);
    regions.push_back(std::move(jr));
  }
  doc["regions"] = std::move(regions);
  return doc.dump(2);
}

std::string bounds_report_to_json(const BoundsReport& rep) {
  ordered_json doc;
  auto arch = ordered_json::array();
  for (int w : rep.arch) arch.push_back(w);
  doc["arch"] = std::move(arch);
  if (rep.rank >= 0) doc["rank"] = rep.rank;
  doc["zero_bias"] = rep.zero_bias;
  ordered_json vals;
  for (const auto& [name, value] : rep.values) vals[name] = value;
  doc["values"] = std::move(vals);
  return doc.dump(2);
}

std::string bounds_report_to_table(const BoundsReport& rep,
                                   const long long* enumerated_simplices) {
  std::ostringstream os;
  os << "arch ";
  for (size_t i = 0; i < rep.arch.size(); ++i)
    os << (i ? "-" : "") << rep.arch[i];
  os << "\n";

  std::vector<std::pair<std::string, std::string>> rows;
  auto add = [&](const char* label, const std::string* v) {
    if (v) rows.emplace_back(label, *v);
  };
  add("simplices upper bound", rep.find("simplices_upper"));
  if (enumerated_simplices)
    rows.emplace_back("simplices enumerated",
                      std::to_string(*enumerated_simplices));
  add("simplices lower bound", rep.find("simplices_lower"));
  add("simplices lower bound (regions)",
      rep.find("regions_as_simplices_lower"));
  add("upper bound leading term", rep.find("simplices_upper_leading_term"));
  add("regions upper bound", rep.find("regions_upper"));
  add("regions (general position)", rep.find("regions_general_position"));
  add("regions (central)", rep.find("regions_central"));
  add("avg faces bound (one layer)", rep.find("avg_faces_bound_one_layer"));
  add("avg faces bound (d=2)", rep.find("avg_faces_bound_multilayer_d2"));
  add("avg faces bound (zero bias)", rep.find("avg_faces_bound_zero_bias"));
  add("avg faces bound (low rank)",
      rep.find("avg_faces_bound_lowrank_multilayer"));
  add("avg faces bound (low rank, one layer)",
      rep.find("avg_faces_bound_lowrank_one_layer"));
  add("parameters", rep.find("params"));

  size_t label_w = 0;
  for (const auto& [label, value] : rows) label_w = std::max(label_w, label.size());
  for (const auto& [label, value] : rows)
    os << "  " << std::left << std::setw(static_cast<int>(label_w) + 2)
       << label << value << "\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot open for writing: " + path);
  out << content;
  if (!out) raise(ErrorCode::IoError, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace polyprof
