#pragma once

#include <string>
#include <vector>

namespace zonemv::app {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#000000";
  bool dashed = false;
  bool step = false;  // draw as a piecewise-constant staircase
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool legend_left = false;
};

/// Static SVG with panels laid out row-major in `columns` columns.
std::string render_svg(const std::vector<Panel>& panels, int columns, int panel_width = 420,
                       int panel_height = 240);

}  // namespace zonemv::app
