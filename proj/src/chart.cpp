#include "diachron/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "diachron/error.hpp"
#include "diachron/report.hpp"

namespace diachron::report {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

std::string fixed(double v) {
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  std::array<char, 48> buf{};
  std::snprintf(buf.data(), buf.size(), "%.4g", v);
  return buf.data();
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo, hi;
};

Range padded(double lo, double hi, double pad_fraction) {
  if (hi == lo) {
    const double half = lo == 0.0 ? 0.5 : std::abs(lo) * 0.1;
    return {lo - half, hi + half};
  }
  const double pad = (hi - lo) * pad_fraction;
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_svg(const ChartSpec& spec) {
  if (spec.series.empty()) throw EmptySeries("chart '" + spec.title + "' has no points");
  for (std::size_t i = 1; i < spec.series.size(); ++i) {
    if (!(spec.series[i].first > spec.series[i - 1].first)) {
      throw InvalidInput("chart '" + spec.title + "' x values must be strictly increasing");
    }
  }

  double x_lo = spec.series.front().first, x_hi = spec.series.back().first;
  for (const double m : spec.markers) x_lo = std::min(x_lo, m), x_hi = std::max(x_hi, m);
  double y_lo = spec.series.front().second, y_hi = y_lo;
  for (const auto& [_, y] : spec.series) y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
  const Range xr = padded(x_lo, x_hi, 0.0);
  const Range yr = padded(y_lo, y_hi, 0.05);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto map_x = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto map_y = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"400\" viewBox=\"0 0 720 400\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"720\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text class=\"title\" x=\"360\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         escape_xml(spec.title) + "</text>\n";

  const std::string x0 = fixed(kLeft), x1 = fixed(kWidth - kRight);
  const std::string y0 = fixed(kTop + plot_h), y1 = fixed(kTop);
  svg += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 + "\"/>\n";
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 + "\"/>\n";
  svg += "</g>\n";

  svg += "<g class=\"ticks\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const std::string px = fixed(map_x(xv));
    svg += "<line x1=\"" + px + "\" y1=\"" + y0 + "\" x2=\"" + px + "\" y2=\"" + fixed(kTop + plot_h + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px + "\" y=\"" + fixed(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           tick_label(xv) + "</text>\n";
    const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    const std::string py = fixed(map_y(yv));
    svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + py + "\" x2=\"" + x0 + "\" y2=\"" + py +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(map_y(yv) + 4) + "\" text-anchor=\"end\">" +
           tick_label(yv) + "</text>\n";
  }
  svg += "</g>\n";

  svg += "<text class=\"x-label\" x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape_xml(spec.x_label) + "</text>\n";
  svg += "<text class=\"y-label\" x=\"18\" y=\"" + fixed(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fixed(kTop + plot_h / 2) + ")\">" + escape_xml(spec.y_label) + "</text>\n";

  for (const double m : spec.markers) {
    const std::string px = fixed(map_x(m));
    svg += "<line class=\"marker\" x1=\"" + px + "\" y1=\"" + y1 + "\" x2=\"" + px + "\" y2=\"" + y0 +
           "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  }

  svg += "<polyline class=\"series\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    if (i) svg += ' ';
    svg += fixed(map_x(spec.series[i].first)) + "," + fixed(map_y(spec.series[i].second));
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

std::filesystem::path emit_chart(const ChartSpec& spec, const std::filesystem::path& out_path) {
  write_file_atomic(out_path, render_svg(spec));
  return out_path;
}

}  // namespace diachron::report
