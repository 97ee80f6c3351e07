#include "acsel/metrics.hpp"

#include "acsel/errors.hpp"

namespace acsel {

SelectionScore score_selection(const std::vector<int>& truth,
                               const SelectionMask& mask) {
  const int selected = mask_count(mask);
  if (truth.empty() || selected == 0) {
    throw ParseError("score_selection: needs a non-empty truth and mask");
  }
  int hits = 0;
  for (int t : truth) {
    if (t >= 0 && t < static_cast<int>(mask.size()) && mask[t]) ++hits;
  }
  SelectionScore s;
  s.recall = static_cast<double>(hits) / static_cast<double>(truth.size());
  s.precision = static_cast<double>(hits) / static_cast<double>(selected);
  s.fscore = (s.recall + s.precision > 0.0)
                 ? 2.0 * s.recall * s.precision / (s.recall + s.precision)
                 : 0.0;
  return s;
}

MetricsRecord compute_metrics(const std::vector<int>& truth,
                              const std::vector<SelectionMask>& masks) {
  MetricsRecord rec;
  rec.n_total = static_cast<int>(masks.size());
  int empty = 0;
  double sum_r = 0.0, sum_p = 0.0, sum_f = 0.0;
  for (const auto& mask : masks) {
    if (mask_count(mask) == 0) {
      ++empty;
      continue;
    }
    const SelectionScore s = score_selection(truth, mask);
    sum_r += s.recall;
    sum_p += s.precision;
    sum_f += s.fscore;
    ++rec.n_nonempty;
  }
  rec.emptiness =
      rec.n_total > 0 ? static_cast<double>(empty) / rec.n_total : 0.0;
  if (rec.n_nonempty > 0) {
    rec.recall = sum_r / rec.n_nonempty;
    rec.precision = sum_p / rec.n_nonempty;
    rec.fscore = sum_f / rec.n_nonempty;
  }
  return rec;
}

}  // namespace acsel
