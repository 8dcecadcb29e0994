#include "narsrl/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "narsrl/format.hpp"

namespace narsrl {

namespace {

constexpr double kWidth = 960, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 40, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

double round_sig(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return 0.0;
  const double mag = std::pow(10.0, digits - 1 - (int)std::floor(std::log10(std::abs(v))));
  return std::round(v * mag) / mag;
}

std::string num(double v) {
  // Plot coordinates, 2 decimals is plenty and keeps files small.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t cap) {
  std::vector<std::size_t> idx;
  if (n <= cap) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  const std::size_t stride = (n + cap - 1) / cap;
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

}  // namespace

std::string render_plot_svg(
    const std::vector<std::pair<std::string, AggregateSeries>>& series,
    const std::string& metric) {
  if (series.empty()) throw std::invalid_argument("plot: no series");
  for (const auto& [label, agg] : series) {
    if (agg.steps.empty()) throw std::invalid_argument("plot: empty series: " + label);
    if (!agg.metrics.count(metric))
      throw std::invalid_argument("plot: unknown metric: " + metric);
  }

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& [label, agg] : series) {
    x0 = std::min(x0, static_cast<double>(agg.steps.front()));
    x1 = std::max(x1, static_cast<double>(agg.steps.back()));
    const auto& [mean, sd] = agg.metrics.at(metric);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      y0 = std::min(y0, mean[i] - sd[i]);
      y1 = std::max(y1, mean[i] + sd[i]);
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) {
    y0 -= 1;
    y1 += 1;
  } else {
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"600\" "
         "viewBox=\"0 0 960 600\">\n";
  svg += "<rect width=\"960\" height=\"600\" fill=\"white\"/>\n";

  // grid and ticks
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    svg += "<line x1=\"" + num(px(xv)) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(px(xv)) + "\" y2=\"" + num(kTop + ph) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(yv)) + "\" x2=\"" +
           num(kLeft + pw) + "\" y2=\"" + num(py(yv)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(kTop + ph + 18) +
           "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\">" +
           format_double(round_sig(xv, 4)) + "</text>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(yv) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\" fill=\"#333333\">" +
           format_double(round_sig(yv, 4)) + "</text>\n";
  }
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& [label, agg] = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    const auto& [mean, sd] = agg.metrics.at(metric);
    const auto idx = sample_indices(agg.steps.size(), 800);

    std::string band = "<polygon fill=\"" + std::string(color) +
                       "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (const auto i : idx)
      band += num(px(static_cast<double>(agg.steps[i]))) + "," +
              num(py(mean[i] + sd[i])) + " ";
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
      band += num(px(static_cast<double>(agg.steps[*it]))) + "," +
              num(py(mean[*it] - sd[*it])) + " ";
    band += "\"/>\n";
    svg += band;

    std::string line = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                       "\" stroke-width=\"2\" points=\"";
    for (const auto i : idx)
      line += num(px(static_cast<double>(agg.steps[i]))) + "," + num(py(mean[i])) + " ";
    line += "\"/>\n";
    svg += line;

    // legend entry
    const double ly = kTop + 14 + 18 * static_cast<double>(si);
    svg += "<line x1=\"" + num(kLeft + pw - 150) + "\" y1=\"" + num(ly) +
           "\" x2=\"" + num(kLeft + pw - 122) + "\" y2=\"" + num(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"3\"/>\n";
    svg += "<text x=\"" + num(kLeft + pw - 116) + "\" y=\"" + num(ly + 4) +
           "\" font-size=\"12\" fill=\"#333333\">" + escape_xml(label) +
           "</text>\n";
  }

  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 16) +
         "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#111111\">Time steps"
         "</text>\n";
  svg += "<text x=\"20\" y=\"" + num(kTop + ph / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#111111\" "
         "transform=\"rotate(-90 20 " +
         num(kTop + ph / 2) + ")\">" + escape_xml(metric) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace narsrl
