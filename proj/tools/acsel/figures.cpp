#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "acsel/artifact.hpp"
#include "acsel/csv.hpp"
#include "acsel/errors.hpp"
#include "acsel/plot.hpp"
#include "acsel/version.hpp"
#include "common.hpp"

namespace acsel::cli {

namespace {

double cell_double(const std::vector<std::string>& row, int index) {
  return std::stod(row[index]);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

// Provenance comment as the first line of every figure: tool version plus
// the content hashes of the CSVs the figure was rendered from.
std::string provenance(const std::vector<std::string>& sources) {
  std::string line = std::string("<!-- acsel ") + kVersion + ";";
  for (const auto& path : sources) {
    line += " source: " + basename_of(path) + " fnv1a=" + fnv1a_file_hex(path) + ";";
  }
  line += " -->\n";
  return line;
}

}  // namespace

std::vector<ResultRow> load_results_csv(const std::string& path) {
  const StringTable table = read_string_csv(path);
  const int scenario = table.column_index("scenario");
  const int selector = table.column_index("selector");
  const int method = table.column_index("method");
  const int c0 = table.column_index("c0");
  const int metric = table.column_index("metric");
  const int value = table.column_index("value");
  const int lo = table.column_index("lo95");
  const int hi = table.column_index("hi95");
  if (scenario < 0 || selector < 0 || method < 0 || c0 < 0 || metric < 0 ||
      value < 0) {
    throw ParseError(path + ": not a results csv");
  }

  std::vector<ResultRow> rows;
  for (const auto& raw : table.rows) {
    ResultRow row;
    row.scenario = raw[scenario];
    row.selector = raw[selector];
    row.method = raw[method];
    row.metric = raw[metric];
    row.has_c0 = !raw[c0].empty();
    if (row.has_c0) row.c0 = cell_double(raw, c0);
    row.value = cell_double(raw, value);
    row.lo = lo >= 0 && !raw[lo].empty() ? cell_double(raw, lo) : row.value;
    row.hi = hi >= 0 && !raw[hi].empty() ? cell_double(raw, hi) : row.value;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ReplicateRow> load_replicate_csv(const std::string& path) {
  const StringTable table = read_string_csv(path);
  const int scenario = table.column_index("scenario");
  const int selector = table.column_index("selector");
  const int method = table.column_index("method");
  const int c0 = table.column_index("c0");
  const int replicate = table.column_index("replicate");
  const int n_selected = table.column_index("n_selected");
  const int n_hits = table.column_index("n_hits");
  if (selector < 0 || method < 0 || c0 < 0 || replicate < 0 ||
      n_selected < 0 || n_hits < 0) {
    throw ParseError(path + ": not a replicate log");
  }

  std::vector<ReplicateRow> rows;
  for (const auto& raw : table.rows) {
    ReplicateRow row;
    row.scenario = scenario >= 0 ? raw[scenario] : "";
    row.selector = raw[selector];
    row.method = raw[method];
    row.has_c0 = !raw[c0].empty();
    if (row.has_c0) row.c0 = cell_double(raw, c0);
    row.replicate = std::stoi(raw[replicate]);
    row.n_selected = std::stoi(raw[n_selected]);
    row.n_hits = std::stoi(raw[n_hits]);
    rows.push_back(row);
  }
  return rows;
}

void write_bench_figures(const std::string& out_dir,
                         const std::string& results_csv,
                         const std::string& replicates_csv) {
  const std::vector<ResultRow> results = load_results_csv(results_csv);
  const std::vector<ReplicateRow> replicates =
      load_replicate_csv(replicates_csv);
  const std::string stamp = provenance({results_csv, replicates_csv});

  std::set<std::string> selectors;
  for (const auto& row : results) selectors.insert(row.selector);

  for (const std::string& selector : selectors) {
    // c0 grid for this selector, descending
    std::set<double, std::greater<double>> grid;
    for (const auto& row : results) {
      if (row.selector == selector && row.method == "acsel" && row.has_c0) {
        grid.insert(row.c0);
      }
    }
    if (grid.empty()) continue;
    const std::vector<double> c0s(grid.begin(), grid.end());

    auto lookup = [&](const std::string& method, double c0, bool has_c0,
                      const std::string& metric) -> const ResultRow* {
      for (const auto& row : results) {
        if (row.selector == selector && row.method == method &&
            row.metric == metric && row.has_c0 == has_c0 &&
            (!has_c0 || std::abs(row.c0 - c0) < 1e-9)) {
          return &row;
        }
      }
      return nullptr;
    };

    // four-indicator curves
    std::vector<PlotSeries> curves;
    for (const char* metric : {"recall", "precision", "fscore", "emptiness"}) {
      PlotSeries series;
      series.label = metric;
      series.markers = true;
      for (double c0 : c0s) {
        const ResultRow* row = lookup("acsel", c0, true, metric);
        if (!row) continue;
        series.x.push_back(c0);
        series.y.push_back(row->value);
        series.band_lo.push_back(row->lo);
        series.band_hi.push_back(row->hi);
      }
      curves.push_back(std::move(series));
    }
    PlotOptions curve_opts;
    curve_opts.title = selector + ": indicators vs c0";
    curve_opts.x_label = "c0";
    curve_opts.y_label = "value";
    curve_opts.x_reversed = true;
    curve_opts.y_min = 0.0;
    curve_opts.y_max = 1.0;
    save_svg(join(out_dir, sanitize(selector) + "_curves.svg"),
             stamp + render_line_chart(curves, curve_opts));

    // precision histograms at the highest, middle, deepest c0
    const std::vector<double> marks = {
        c0s.front(), c0s[c0s.size() / 2], c0s.back()};
    std::vector<HistogramPanel> panels;
    for (double c0 : marks) {
      HistogramPanel panel;
      panel.label = "c0=" + std::to_string(c0).substr(0, 4);
      for (const auto& row : replicates) {
        if (row.selector == selector && row.method == "acsel" && row.has_c0 &&
            std::abs(row.c0 - c0) < 1e-9 && row.n_selected > 0) {
          panel.values.push_back(static_cast<double>(row.n_hits) /
                                 row.n_selected);
        }
      }
      panels.push_back(std::move(panel));
    }
    save_svg(join(out_dir, sanitize(selector) + "_precision_hist.svg"),
             stamp + render_histogram_panels(
                         panels,
                         selector + ": precision of non-empty selections",
                         0.0, 1.0, 20));

    // precision vs emptiness comparison
    std::vector<PlotSeries> tradeoff;
    for (const char* method : {"acsel", "naive"}) {
      PlotSeries series;
      series.label = method;
      series.markers = true;
      for (double c0 : c0s) {
        const ResultRow* pr = lookup(method, c0, true, "precision");
        const ResultRow* er = lookup(method, c0, true, "emptiness");
        if (!pr || !er) continue;
        series.x.push_back(er->value);
        series.y.push_back(pr->value);
      }
      if (!series.x.empty()) tradeoff.push_back(std::move(series));
    }
    {
      const ResultRow* pr = lookup("stability", 0, false, "precision");
      const ResultRow* er = lookup("stability", 0, false, "emptiness");
      if (pr && er) {
        PlotSeries series;
        series.label = "stability";
        series.markers = true;
        series.x = {er->value};
        series.y = {pr->value};
        tradeoff.push_back(std::move(series));
      }
    }
    PlotOptions tradeoff_opts;
    tradeoff_opts.title = selector + ": precision vs emptiness";
    tradeoff_opts.x_label = "emptiness";
    tradeoff_opts.y_label = "precision";
    tradeoff_opts.y_min = 0.0;
    tradeoff_opts.y_max = 1.0;
    save_svg(join(out_dir, sanitize(selector) + "_tradeoff.svg"),
             stamp + render_line_chart(tradeoff, tradeoff_opts));
  }
}

void write_sweep_figures(const std::string& out_dir,
                         const std::string& sweep_csv,
                         const std::string& path_csv) {
  const StringTable sweep = read_string_csv(sweep_csv);
  const int c0_col = sweep.column_index("c0");
  const int var_col = sweep.column_index("variable");
  const int name_col = sweep.column_index("name");
  const int zeta_col = sweep.column_index("zeta");
  if (c0_col < 0 || var_col < 0 || zeta_col < 0) {
    throw ParseError(sweep_csv + ": not a sweep csv");
  }

  std::map<int, PlotSeries> by_variable;
  for (const auto& row : sweep.rows) {
    const int var = std::stoi(row[var_col]);
    PlotSeries& series = by_variable[var];
    if (series.label.empty()) {
      series.label = name_col >= 0 ? row[name_col] : "x" + row[var_col];
    }
    series.x.push_back(std::stod(row[c0_col]));
    series.y.push_back(std::stod(row[zeta_col]));
  }
  std::vector<PlotSeries> zeta_series;
  for (auto& [var, series] : by_variable) {
    // keep the legend readable: label only variables that ever reach 0.5
    if (*std::max_element(series.y.begin(), series.y.end()) < 0.5) {
      series.label.clear();
    }
    zeta_series.push_back(std::move(series));
  }
  PlotOptions zeta_opts;
  zeta_opts.title = "selection frequency vs c0";
  zeta_opts.x_label = "c0";
  zeta_opts.y_label = "zeta";
  zeta_opts.x_reversed = true;
  zeta_opts.y_min = 0.0;
  zeta_opts.y_max = 1.0;
  save_svg(join(out_dir, "sweep_zeta.svg"),
           provenance({sweep_csv}) + render_line_chart(zeta_series, zeta_opts));

  if (!path_csv.empty() && std::filesystem::exists(path_csv)) {
    const StringTable path = read_string_csv(path_csv);
    const int lambda_col = path.column_index("lambda");
    const int pvar_col = path.column_index("variable");
    const int pname_col = path.column_index("name");
    const int coef_col = path.column_index("coef");
    if (lambda_col >= 0 && pvar_col >= 0 && coef_col >= 0) {
      std::map<int, PlotSeries> coef_series;
      for (const auto& row : path.rows) {
        const int var = std::stoi(row[pvar_col]);
        PlotSeries& series = coef_series[var];
        if (series.label.empty() && pname_col >= 0) series.label = row[pname_col];
        series.x.push_back(std::log10(std::stod(row[lambda_col])));
        series.y.push_back(std::stod(row[coef_col]));
      }
      std::vector<PlotSeries> all;
      for (auto& [var, series] : coef_series) {
        double peak = 0.0;
        for (double v : series.y) peak = std::max(peak, std::abs(v));
        if (peak < 1e-8) series.label.clear();
        all.push_back(std::move(series));
      }
      PlotOptions path_opts;
      path_opts.title = "lasso coefficient path";
      path_opts.x_label = "log10(lambda)";
      path_opts.y_label = "coefficient";
      save_svg(join(out_dir, "coef_path.svg"),
               provenance({path_csv}) + render_line_chart(all, path_opts));
    }
  }
}

}  // namespace acsel::cli
