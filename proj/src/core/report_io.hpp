#pragma once

#include <string>

#include "bounds.hpp"
#include "profiler.hpp"

namespace polyprof {

// Profile report. Fields: net, box, mode, seed, include_box_faces, regions
// (pattern hex, vertices, faces, simplices, volume), omega, simple_fraction,
// avg_faces. Payloads carry no timestamps so identical runs are byte-equal.
std::string profile_to_json(const NetworkProfile& profile);
NetworkProfile profile_from_json(const std::string& text);

// CSV with header bin_lo,bin_hi,count.
std::string histogram_to_csv(const Histogram& h);

// standalone bar-chart SVG of the histogram
std::string histogram_to_svg(const Histogram& h);

// region map of a cross-section, polygons colored by pattern hash
std::string cross_section_to_svg(const CrossSection& cs);

std::string cross_section_to_json(const CrossSection& cs,
                                  const std::string& net_path);

std::string bounds_report_to_json(const BoundsReport& rep);

// Aligned table in the upper / enumerated / lower layout; the enumerated row
// appears when a profiled simplex total is supplied.
std::string bounds_report_to_table(const BoundsReport& rep,
                                   const long long* enumerated_simplices);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace polyprof
