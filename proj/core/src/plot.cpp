#include "acsel/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "acsel/errors.hpp"

namespace acsel {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

struct Frame {
  double width = 760, height = 480;
  double left = 64, right = 150, top = 40, bottom = 48;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool x_reversed = false;

  double px(double x) const {
    double t = (x - x_min) / (x_max - x_min);
    if (x_reversed) t = 1.0 - t;
    return left + t * (width - left - right);
  }
  double py(double y) const {
    const double t = (y - y_min) / (y_max - y_min);
    return height - bottom - t * (height - top - bottom);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string tick_label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void axes(std::ostringstream& svg, const Frame& f, const PlotOptions& opt) {
  svg << "<rect x='" << f.left << "' y='" << f.top << "' width='"
      << (f.width - f.left - f.right) << "' height='"
      << (f.height - f.top - f.bottom)
      << "' fill='none' stroke='#444' stroke-width='1'/>\n";
  svg << "<text x='" << (f.width - f.right + f.left) / 2 << "' y='20' "
      << "text-anchor='middle' font-size='14' font-family='sans-serif'>"
      << opt.title << "</text>\n";
  svg << "<text x='" << (f.width - f.right + f.left) / 2 << "' y='"
      << (f.height - 10)
      << "' text-anchor='middle' font-size='12' font-family='sans-serif'>"
      << opt.x_label << "</text>\n";
  svg << "<text x='16' y='" << (f.height / 2)
      << "' text-anchor='middle' font-size='12' font-family='sans-serif' "
      << "transform='rotate(-90 16 " << (f.height / 2) << ")'>" << opt.y_label
      << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = f.x_min + (f.x_max - f.x_min) * i / 5.0;
    const double yv = f.y_min + (f.y_max - f.y_min) * i / 5.0;
    svg << "<line x1='" << f.px(xv) << "' y1='" << (f.height - f.bottom)
        << "' x2='" << f.px(xv) << "' y2='" << (f.height - f.bottom + 4)
        << "' stroke='#444'/>\n";
    svg << "<text x='" << f.px(xv) << "' y='" << (f.height - f.bottom + 16)
        << "' text-anchor='middle' font-size='10' font-family='sans-serif'>"
        << tick_label(xv) << "</text>\n";
    svg << "<line x1='" << (f.left - 4) << "' y1='" << f.py(yv) << "' x2='"
        << f.left << "' y2='" << f.py(yv) << "' stroke='#444'/>\n";
    svg << "<text x='" << (f.left - 7) << "' y='" << (f.py(yv) + 3)
        << "' text-anchor='end' font-size='10' font-family='sans-serif'>"
        << tick_label(yv) << "</text>\n";
  }
}

}  // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const PlotOptions& options) {
  Frame f;
  f.x_reversed = options.x_reversed;

  bool any = false;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      if (!any) {
        x_lo = x_hi = s.x[i];
        y_lo = y_hi = s.y[i];
        any = true;
      }
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
      if (i < s.band_lo.size()) y_lo = std::min(y_lo, s.band_lo[i]);
      if (i < s.band_hi.size()) y_hi = std::max(y_hi, s.band_hi[i]);
    }
  }
  if (options.y_min) y_lo = *options.y_min;
  if (options.y_max) y_hi = *options.y_max;
  if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
  if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
  f.x_min = x_lo;
  f.x_max = x_hi;
  f.y_min = y_lo - 0.04 * (y_hi - y_lo);
  f.y_max = y_hi + 0.04 * (y_hi - y_lo);

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << f.width
      << "' height='" << f.height << "' viewBox='0 0 " << f.width << ' '
      << f.height << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  axes(svg, f, options);

  int color_index = 0;
  double legend_y = f.top + 10;
  for (const auto& s : series) {
    const char* color = kPalette[color_index % kPaletteSize];
    ++color_index;

    if (!s.band_lo.empty() && s.band_lo.size() == s.x.size() &&
        s.band_hi.size() == s.x.size()) {
      std::ostringstream pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        pts << fmt(f.px(s.x[i])) << ',' << fmt(f.py(s.band_lo[i])) << ' ';
      }
      for (std::size_t i = s.x.size(); i-- > 0;) {
        pts << fmt(f.px(s.x[i])) << ',' << fmt(f.py(s.band_hi[i])) << ' ';
      }
      svg << "<polygon points='" << pts.str() << "' fill='" << color
          << "' fill-opacity='0.15' stroke='none'/>\n";
    }

    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.y[i])) continue;
      pts << fmt(f.px(s.x[i])) << ',' << fmt(f.py(s.y[i])) << ' ';
    }
    svg << "<polyline points='" << pts.str() << "' fill='none' stroke='"
        << color << "' stroke-width='1.6'/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (std::isnan(s.y[i])) continue;
        svg << "<circle cx='" << fmt(f.px(s.x[i])) << "' cy='"
            << fmt(f.py(s.y[i])) << "' r='2.6' fill='" << color << "'/>\n";
      }
    }

    if (!s.label.empty()) {
      const double lx = f.width - f.right + 8;
      svg << "<line x1='" << lx << "' y1='" << legend_y << "' x2='" << (lx + 18)
          << "' y2='" << legend_y << "' stroke='" << color
          << "' stroke-width='2'/>\n";
      svg << "<text x='" << (lx + 22) << "' y='" << (legend_y + 3)
          << "' font-size='10' font-family='sans-serif'>" << s.label
          << "</text>\n";
      legend_y += 14;
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_histogram_panels(const std::vector<HistogramPanel>& panels,
                                    const std::string& title, double lo,
                                    double hi, int bins) {
  const double panel_w = 240, panel_h = 220, gap = 16, top = 42, bottom = 36;
  const double width = gap + panels.size() * (panel_w + gap);
  const double height = top + panel_h + bottom;

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "' viewBox='0 0 " << width << ' ' << height
      << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << width / 2 << "' y='20' text-anchor='middle' "
      << "font-size='14' font-family='sans-serif'>" << title << "</text>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double x0 = gap + p * (panel_w + gap);
    std::vector<int> counts(bins, 0);
    for (double v : panels[p].values) {
      int b = static_cast<int>((v - lo) / (hi - lo) * bins);
      b = std::clamp(b, 0, bins - 1);
      ++counts[b];
    }
    const int peak = std::max(1, *std::max_element(counts.begin(), counts.end()));

    svg << "<rect x='" << x0 << "' y='" << top << "' width='" << panel_w
        << "' height='" << panel_h
        << "' fill='none' stroke='#444' stroke-width='1'/>\n";
    for (int b = 0; b < bins; ++b) {
      const double bar_h = panel_h * counts[b] / static_cast<double>(peak);
      const double bx = x0 + panel_w * b / static_cast<double>(bins);
      svg << "<rect x='" << bx << "' y='" << (top + panel_h - bar_h)
          << "' width='" << (panel_w / bins - 1) << "' height='" << bar_h
          << "' fill='#1f77b4'/>\n";
    }
    svg << "<text x='" << (x0 + panel_w / 2) << "' y='" << (top + panel_h + 16)
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
        << panels[p].label << "</text>\n";
    svg << "<text x='" << x0 << "' y='" << (top + panel_h + 28)
        << "' font-size='9' font-family='sans-serif'>" << tick_label(lo)
        << "</text>\n";
    svg << "<text x='" << (x0 + panel_w) << "' y='" << (top + panel_h + 28)
        << "' text-anchor='end' font-size='9' font-family='sans-serif'>"
        << tick_label(hi) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void save_svg(const std::string& path, const std::string& svg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << svg;
}

}  // namespace acsel
