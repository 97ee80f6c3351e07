#pragma once

#include <optional>
#include <string>
#include <vector>

namespace acsel {

/// One polyline with optional confidence band, drawn in data coordinates.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band_lo;  // optional, same length as x
  std::vector<double> band_hi;
  bool markers = false;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool x_reversed = false;  // e.g. c0 axes running from 1 down
  std::optional<double> y_min;
  std::optional<double> y_max;
};

/// Self-contained SVG line chart; no external plotting runtime involved.
std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const PlotOptions& options);

struct HistogramPanel {
  std::string label;
  std::vector<double> values;
};

/// Side-by-side histogram panels over a shared [lo, hi] range.
std::string render_histogram_panels(const std::vector<HistogramPanel>& panels,
                                    const std::string& title, double lo,
                                    double hi, int bins);

void save_svg(const std::string& path, const std::string& svg);

}  // namespace acsel
