#include "zonemv/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace zonemv::app {

namespace {

constexpr int kMarginLeft = 58;
constexpr int kMarginRight = 14;
constexpr int kMarginTop = 26;
constexpr int kMarginBottom = 40;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return mag * (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0);
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = std::max(std::abs(lo) * 0.05, 0.5);
      lo -= pad;
      hi += pad;
    }
  }
};

void draw_panel(std::ostringstream& os, const Panel& p, double ox, double oy, int w, int h) {
  Range xr, yr;
  for (const auto& s : p.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const double left = ox + kMarginLeft;
  const double top = oy + kMarginTop;
  const double pw = w - kMarginLeft - kMarginRight;
  const double ph = h - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(oy + 17)
     << "\" text-anchor=\"middle\" font-weight=\"bold\">" << escape(p.title) << "</text>\n";

  const double ystep = nice_step(yr.hi - yr.lo, 5);
  for (double t = std::ceil(yr.lo / ystep) * ystep; t <= yr.hi + 1e-9 * ystep; t += ystep) {
    os << "<line x1=\"" << fmt(left) << "\" x2=\"" << fmt(left + pw) << "\" y1=\"" << fmt(sy(t))
       << "\" y2=\"" << fmt(sy(t)) << "\" stroke=\"#e4e4e4\"/>\n";
    os << "<text x=\"" << fmt(left - 4) << "\" y=\"" << fmt(sy(t) + 4)
       << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  const double xstep = nice_step(xr.hi - xr.lo, 6);
  for (double t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-9 * xstep; t += xstep) {
    os << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(top + ph + 14)
       << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(top + ph + 30)
     << "\" text-anchor=\"middle\">" << escape(p.x_label) << "</text>\n";
  os << "<text transform=\"translate(" << fmt(ox + 14) << "," << fmt(top + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(p.y_label) << "</text>\n";

  int labelled = 0;
  std::size_t longest = 0;
  for (const auto& s : p.series) {
    labelled += s.label.empty() ? 0 : 1;
    longest = std::max(longest, s.label.size());
  }
  const double lw = 28.0 + 6.2 * static_cast<double>(longest);
  const double lx = p.legend_left ? left + 2 : left + pw - lw - 2;
  std::ostringstream legend;
  if (labelled > 0) {
    legend << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(top + 2)
       << "\" width=\"" << fmt(lw) << "\" height=\"" << 13 * labelled + 4
       << "\" fill=\"white\" fill-opacity=\"0.85\"/>\n";
  }
  int legend_row = 0;
  for (const auto& s : p.series) {
    const std::size_t count = std::min(s.x.size(), s.y.size());
    if (count == 0) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.4\"";
    if (s.dashed) os << " stroke-dasharray=\"5,3\"";
    os << " points=\"";
    for (std::size_t k = 0; k < count; ++k) {
      if (s.step && k > 0) os << fmt(sx(s.x[k])) << ',' << fmt(sy(s.y[k - 1])) << ' ';
      os << fmt(sx(s.x[k])) << ',' << fmt(sy(s.y[k])) << ' ';
    }
    os << "\"/>\n";
    if (!s.label.empty()) {
      const double ly = top + 12 + 13 * legend_row++;
      legend << "<line x1=\"" << fmt(lx + 4) << "\" x2=\"" << fmt(lx + 20) << "\" y1=\""
         << fmt(ly - 4) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << s.color << "\"";
      if (s.dashed) legend << " stroke-dasharray=\"5,3\"";
      legend << "/>\n<text x=\"" << fmt(lx + 24) << "\" y=\"" << fmt(ly) << "\">"
         << escape(s.label) << "</text>\n";
    }
  }
  os << legend.str();
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, int columns, int panel_width,
                       int panel_height) {
  columns = std::max(columns, 1);
  const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << columns * panel_width
     << "\" height=\"" << rows * panel_height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const int r = static_cast<int>(i) / columns;
    const int c = static_cast<int>(i) % columns;
    draw_panel(os, panels[i], c * panel_width, r * panel_height, panel_width, panel_height);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace zonemv::app
