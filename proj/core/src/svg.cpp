#include "mkdv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mkdv/errors.hpp"

namespace mkdv {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_line_chart(const std::vector<Series>& series, const SvgOptions& opts) {
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = opts.width - ml - mr;
  const double ph = opts.height - mt - mb;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-300) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
         std::to_string(opts.width) + " " + std::to_string(opts.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    svg += "<text x=\"" + fmt(opts.width / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" font-family=\"sans-serif\">" +
           opts.title + "</text>\n";

  // axes
  svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 5.0;
    const double fy = ymin + (ymax - ymin) * i / 5.0;
    svg += "<line x1=\"" + fmt(X(fx)) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(X(fx)) +
           "\" y2=\"" + fmt(mt + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(X(fx)) + "\" y=\"" + fmt(mt + ph + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" + fmt(fx) +
           "</text>\n";
    svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(Y(fy)) + "\" x2=\"" + fmt(ml) +
           "\" y2=\"" + fmt(Y(fy)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(Y(fy) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + fmt(fy) +
           "</text>\n";
  }
  if (!opts.xlabel.empty())
    svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(opts.height - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" +
           opts.xlabel + "</text>\n";
  if (!opts.ylabel.empty())
    svg += "<text x=\"16\" y=\"" + fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 16 " +
           fmt(mt + ph / 2) + ")\">" + opts.ylabel + "</text>\n";

  if (std::isfinite(opts.vline)) {
    svg += "<line x1=\"" + fmt(X(opts.vline)) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
           fmt(X(opts.vline)) + "\" y2=\"" + fmt(mt + ph) +
           "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
    if (!opts.vline_label.empty())
      svg += "<text x=\"" + fmt(X(opts.vline) + 4) + "\" y=\"" + fmt(mt + 14) +
             "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#555555\">" +
             opts.vline_label + "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.x.empty()) continue;
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += fmt(X(s.x[i])) + "," + fmt(Y(s.y[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += kColors[si % 8];
    svg += "\" stroke-width=\"1.5\"";
    if (s.dotted) svg += " stroke-dasharray=\"2 3\"";
    svg += " points=\"" + pts + "\"/>\n";
  }
  // legend
  double ly = mt + 14;
  for (std::size_t si = 0; si < series.size(); ++si) {
    if (series[si].label.empty()) continue;
    svg += "<line x1=\"" + fmt(ml + 10) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
           fmt(ml + 34) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"";
    svg += kColors[si % 8];
    svg += "\"";
    if (series[si].dotted) svg += " stroke-dasharray=\"2 3\"";
    svg += "/>\n<text x=\"" + fmt(ml + 40) + "\" y=\"" + fmt(ly) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + series[si].label +
           "</text>\n";
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

void save_line_chart(const std::filesystem::path& path, const std::vector<Series>& series,
                     const SvgOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << render_line_chart(series, opts);
}

}  // namespace mkdv
