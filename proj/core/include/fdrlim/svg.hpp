#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fdrlim {

// One curve on a plot. Points are in data coordinates.
struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Renders a self-contained SVG file (720x480) with axes, ticks, and a legend.
void write_svg(const PlotSpec& spec, const std::string& path);

}  // namespace fdrlim
