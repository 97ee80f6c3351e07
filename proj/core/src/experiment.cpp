#include "acsel/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "acsel/errors.hpp"
#include "acsel/parallel.hpp"
#include "acsel/stability.hpp"
#include "acsel/stats.hpp"

namespace acsel {

namespace {

constexpr std::uint64_t kStabilityTag = 0x5AB171u;

std::string format_c0(double c0) {
  std::ostringstream os;
  os.precision(12);
  os << c0;
  return os.str();
}

std::string format_mask(const SelectionMask& mask) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask[j]) {
      if (any) os << ' ';
      os << (j + 1);
      any = true;
    }
  }
  return any ? os.str() : "-";
}

int hits_in(const SelectionMask& mask, const std::vector<int>& truth) {
  int h = 0;
  for (int t : truth) {
    if (t >= 0 && t < static_cast<int>(mask.size()) && mask[t]) ++h;
  }
  return h;
}

CurvePoint summarize(const std::vector<int>& truth,
                     const std::vector<SelectionMask>& masks, double c0,
                     int n_boot, std::uint64_t band_seed) {
  CurvePoint pt;
  pt.c0 = c0;
  pt.metrics = compute_metrics(truth, masks);

  std::vector<double> recalls, precisions, fscores, empties;
  empties.reserve(masks.size());
  for (const auto& mask : masks) {
    if (mask_count(mask) == 0) {
      empties.push_back(1.0);
      continue;
    }
    empties.push_back(0.0);
    const SelectionScore s = score_selection(truth, mask);
    recalls.push_back(s.recall);
    precisions.push_back(s.precision);
    fscores.push_back(s.fscore);
  }
  pt.recall_band = bootstrap_mean_band(recalls, n_boot, derive_seed(band_seed, 1));
  pt.precision_band =
      bootstrap_mean_band(precisions, n_boot, derive_seed(band_seed, 2));
  pt.fscore_band = bootstrap_mean_band(fscores, n_boot, derive_seed(band_seed, 3));
  pt.emptiness_band =
      bootstrap_mean_band(empties, n_boot, derive_seed(band_seed, 4));
  return pt;
}

void validate(const ExperimentConfig& config) {
  if (config.selectors.empty()) {
    throw ParseError("experiment: no selectors configured");
  }
  if (config.c0_grid.empty() || std::abs(config.c0_grid.front() - 1.0) > 1e-12) {
    throw ParseError("experiment: c0 grid must start at 1");
  }
  if (config.b_count < 1 || config.scenario.replicates < 1) {
    throw ParseError("experiment: B and replicates must be >= 1");
  }
}

}  // namespace

int ExperimentConfig::rows_per_replicate() const {
  const int grid = static_cast<int>(c0_grid.size());
  int rows = grid;                  // acsel
  if (with_naive) rows += grid;     // naive
  if (with_stability) rows += 1;    // stability
  return rows * static_cast<int>(selectors.size());
}

ReplicateOutcome run_replicate(const ExperimentConfig& config,
                               const ScenarioSampler& sampler, int r) {
  const std::uint64_t rep_seed =
      derive_seed(config.seed, config.scenario.content_tag(),
                  static_cast<std::uint64_t>(r));

  const Dataset data = sampler.replicate(config.seed, r);
  const StandardizedDesign sd = standardize(data);
  const CorrelationMatrix corr = correlation(sd);

  const int n_sel = static_cast<int>(config.selectors.size());
  const int grid = static_cast<int>(config.c0_grid.size());

  ReplicateOutcome out;
  out.r = r;
  out.acsel_masks.assign(n_sel, {});
  out.naive_masks.assign(n_sel, {});
  out.stability_masks.assign(n_sel, SelectionMask(sd.p(), 0));

  for (int s = 0; s < n_sel; ++s) {
    const Selector select = make_selector(config.selectors[s]);
    const SelectionMask base_mask = select(sd);

    out.acsel_masks[s].resize(grid);
    if (config.with_naive) out.naive_masks[s].resize(grid);

    for (int g = 0; g < grid; ++g) {
      const GroupMap gm = build_groups(corr, config.grouping,
                                       config.c0_grid[g], config.community_algo);
      const ZetaVector zeta = acsel_run(
          sd, select, gm, config.b_count,
          derive_seed(rep_seed, static_cast<std::uint64_t>(s),
                      std::bit_cast<std::uint64_t>(config.c0_grid[g])),
          1);
      out.acsel_masks[s][g] = select_at_threshold(zeta, config.threshold);

      if (config.with_naive) {
        SelectionMask naive = base_mask;
        for (Eigen::Index j = 0; j < sd.p(); ++j) {
          if (naive[j] && gm.groups[j].size() > 1) naive[j] = 0;
        }
        out.naive_masks[s][g] = std::move(naive);
      }
    }

    if (config.with_stability) {
      out.stability_masks[s] =
          stability_selection(
              sd, select, config.stability_b, config.stability_frac,
              config.stability_pi,
              derive_seed(rep_seed, static_cast<std::uint64_t>(s), kStabilityTag),
              1)
              .mask;
    }
  }
  return out;
}

void aggregate_experiment(ExperimentResult& result) {
  const ExperimentConfig& config = result.config;
  const std::vector<int> truth = config.scenario.support();
  const int n_sel = static_cast<int>(config.selectors.size());
  const int grid = static_cast<int>(config.c0_grid.size());
  const std::uint64_t band_root = derive_seed(config.seed, 0xB00757u);

  result.summaries.assign(n_sel, {});
  for (int s = 0; s < n_sel; ++s) {
    auto& summary = result.summaries[s];
    summary.spec = config.selectors[s];
    summary.acsel.resize(grid);
    if (config.with_naive) summary.naive.resize(grid);

    for (int g = 0; g < grid; ++g) {
      std::vector<SelectionMask> acsel_masks, naive_masks;
      acsel_masks.reserve(result.replicates.size());
      for (const auto& rep : result.replicates) {
        acsel_masks.push_back(rep.acsel_masks[s][g]);
        if (config.with_naive) naive_masks.push_back(rep.naive_masks[s][g]);
      }
      summary.acsel[g] =
          summarize(truth, acsel_masks, config.c0_grid[g],
                    config.bootstrap_resamples, derive_seed(band_root, s, g, 0));
      if (config.with_naive) {
        summary.naive[g] = summarize(truth, naive_masks, config.c0_grid[g],
                                     config.bootstrap_resamples,
                                     derive_seed(band_root, s, g, 1));
      }
    }

    if (config.with_stability) {
      std::vector<SelectionMask> st;
      st.reserve(result.replicates.size());
      for (const auto& rep : result.replicates) {
        st.push_back(rep.stability_masks[s]);
      }
      summary.stability =
          summarize(truth, st, std::numeric_limits<double>::quiet_NaN(),
                    config.bootstrap_resamples, derive_seed(band_root, s, 0, 2));
    }
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const ScenarioSampler sampler(config.scenario);

  ExperimentResult result;
  result.config = config;
  result.config.scenario = sampler.scenario();  // n_obs resolved for external
  result.replicates.resize(config.scenario.replicates);
  parallel_for(config.scenario.replicates, config.jobs, [&](int r) {
    result.replicates[r] = run_replicate(result.config, sampler, r);
  });
  aggregate_experiment(result);
  return result;
}

std::vector<double> precision_values(const ExperimentResult& result,
                                     int selector, int c0_index) {
  const std::vector<int> truth = result.config.scenario.support();
  std::vector<double> out;
  for (const auto& rep : result.replicates) {
    const SelectionMask& mask = rep.acsel_masks[selector][c0_index];
    if (mask_count(mask) == 0) continue;
    out.push_back(score_selection(truth, mask).precision);
  }
  return out;
}

std::vector<ConfidencePair> confidence_pairs(const ExperimentResult& result,
                                             int selector) {
  const auto& grid = result.config.c0_grid;
  const int p = result.config.scenario.n_vars;

  std::vector<ConfidencePair> pairs;
  pairs.reserve(result.replicates.size() * p);
  for (const auto& rep : result.replicates) {
    for (int j = 0; j < p; ++j) {
      double min_c0 = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t g = 0; g < grid.size(); ++g) {
        if (rep.acsel_masks[selector][g][j]) min_c0 = grid[g];
      }
      pairs.push_back(
          {std::isnan(min_c0) ? 0.0 : 1.0 - min_c0,
           result.config.scenario.beta[j] != 0.0 ? 1.0 : 0.0});
    }
  }
  return pairs;
}

void write_results_csv(std::ostream& os, const ExperimentResult& result) {
  os << "scenario,selector,method,c0,metric,value,lo95,hi95\n";
  os.precision(10);

  auto emit = [&](const std::string& selector, const std::string& method,
                  const CurvePoint& pt) {
    const std::string c0 =
        std::isnan(pt.c0) ? std::string("") : format_c0(pt.c0);
    auto row = [&](const char* metric, double value,
                   const std::array<double, 2>& band) {
      os << result.config.scenario.name << ',' << selector << ',' << method
         << ',' << c0 << ',' << metric << ',' << value << ',' << band[0] << ','
         << band[1] << '\n';
    };
    row("recall", pt.metrics.recall, pt.recall_band);
    row("precision", pt.metrics.precision, pt.precision_band);
    row("fscore", pt.metrics.fscore, pt.fscore_band);
    row("emptiness", pt.metrics.emptiness, pt.emptiness_band);
    os << result.config.scenario.name << ',' << selector << ',' << method
       << ',' << c0 << ",n_nonempty," << pt.metrics.n_nonempty << ",,\n";
  };

  for (const auto& summary : result.summaries) {
    const std::string sel = to_string(summary.spec);
    for (const auto& pt : summary.acsel) emit(sel, "acsel", pt);
    for (const auto& pt : summary.naive) emit(sel, "naive", pt);
    if (summary.stability) emit(sel, "stability", *summary.stability);
  }
}

void write_replicate_rows(std::ostream& os, const ExperimentConfig& config,
                          const std::vector<ReplicateOutcome>& replicates) {
  const std::vector<int> truth = config.scenario.support();
  const auto& grid = config.c0_grid;

  auto row = [&](const std::string& selector, const std::string& method,
                 const std::string& c0, int r, const SelectionMask& mask) {
    os << config.scenario.name << ',' << selector << ',' << method << ',' << c0
       << ',' << r << ',' << mask_count(mask) << ',' << hits_in(mask, truth)
       << ',' << format_mask(mask) << '\n';
  };

  for (const auto& rep : replicates) {
    for (std::size_t s = 0; s < config.selectors.size(); ++s) {
      const std::string sel = to_string(config.selectors[s]);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        row(sel, "acsel", format_c0(grid[g]), rep.r, rep.acsel_masks[s][g]);
      }
      if (config.with_naive) {
        for (std::size_t g = 0; g < grid.size(); ++g) {
          row(sel, "naive", format_c0(grid[g]), rep.r, rep.naive_masks[s][g]);
        }
      }
      if (config.with_stability) {
        row(sel, "stability", "", rep.r, rep.stability_masks[s]);
      }
    }
  }
}

void write_replicate_log(std::ostream& os, const ExperimentResult& result) {
  os << "scenario,selector,method,c0,replicate,n_selected,n_hits,selected\n";
  write_replicate_rows(os, result.config, result.replicates);
}

std::vector<ReplicateOutcome> parse_replicate_log(
    const std::string& text, const ExperimentConfig& config) {
  const int n_sel = static_cast<int>(config.selectors.size());
  const int grid = static_cast<int>(config.c0_grid.size());
  const int p = config.scenario.n_vars;

  std::map<int, ReplicateOutcome> partial;
  std::map<int, int> row_count;

  std::istringstream in(text);
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_skipped) {
      header_skipped = true;  // column header
      continue;
    }
    std::vector<std::string> cells;
    {
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
    }
    if (cells.size() < 8) continue;

    const std::string& selector = cells[1];
    const std::string& method = cells[2];
    const std::string& c0_text = cells[3];
    const int r = std::stoi(cells[4]);

    int s = -1;
    for (int k = 0; k < n_sel; ++k) {
      if (to_string(config.selectors[k]) == selector) s = k;
    }
    if (s < 0) continue;

    int g = -1;
    if (!c0_text.empty()) {
      const double c0 = std::stod(c0_text);
      for (int k = 0; k < grid; ++k) {
        if (std::abs(config.c0_grid[k] - c0) < 1e-9) g = k;
      }
      if (g < 0) continue;
    }

    SelectionMask mask(p, 0);
    if (cells[7] != "-") {
      std::stringstream ss(cells[7]);
      int idx;
      while (ss >> idx) {
        if (idx >= 1 && idx <= p) mask[idx - 1] = 1;
      }
    }

    auto it = partial.find(r);
    if (it == partial.end()) {
      ReplicateOutcome fresh;
      fresh.r = r;
      fresh.acsel_masks.assign(n_sel, std::vector<SelectionMask>(grid));
      fresh.naive_masks.assign(n_sel, std::vector<SelectionMask>(grid));
      fresh.stability_masks.assign(n_sel, SelectionMask(p, 0));
      it = partial.emplace(r, std::move(fresh)).first;
    }
    if (method == "acsel" && g >= 0) {
      it->second.acsel_masks[s][g] = std::move(mask);
    } else if (method == "naive" && g >= 0) {
      it->second.naive_masks[s][g] = std::move(mask);
    } else if (method == "stability") {
      it->second.stability_masks[s] = std::move(mask);
    } else {
      continue;
    }
    ++row_count[r];
  }

  std::vector<ReplicateOutcome> complete;
  for (auto& [r, outcome] : partial) {
    if (row_count[r] == config.rows_per_replicate()) {
      complete.push_back(std::move(outcome));
    }
  }
  std::sort(complete.begin(), complete.end(),
            [](const auto& a, const auto& b) { return a.r < b.r; });
  return complete;
}

}  // namespace acsel
