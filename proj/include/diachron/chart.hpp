#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace diachron::report {

/// A single-series line chart with optional dashed vertical reference lines.
struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> series;  // x strictly increasing
  std::vector<double> markers;                    // x positions
};

/// Standalone SVG document; identical specs give identical bytes. Throws
/// EmptySeries without points and InvalidInput when x is not strictly increasing.
std::string render_svg(const ChartSpec& spec);

/// Renders and writes atomically; returns `out_path`.
std::filesystem::path emit_chart(const ChartSpec& spec, const std::filesystem::path& out_path);

}  // namespace diachron::report
