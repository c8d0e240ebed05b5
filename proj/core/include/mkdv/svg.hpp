#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace mkdv {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool dotted = false;
};

struct SvgOptions {
  int width = 800;
  int height = 500;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  // Optional vertical marker (e.g. min-gap time); drawn when finite.
  double vline = std::numeric_limits<double>::quiet_NaN();
  std::string vline_label;
};

// Deterministic self-rendered SVG line chart: fixed viewbox, embedded axis
// labels, byte-stable for identical inputs. Empty input renders empty axes.
std::string render_line_chart(const std::vector<Series>& series, const SvgOptions& opts);

void save_line_chart(const std::filesystem::path& path, const std::vector<Series>& series,
                     const SvgOptions& opts);

}  // namespace mkdv
