#include "acsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "acsel/rng.hpp"

namespace acsel {

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman_rho: need matched samples, n >= 2");
  }
  return pearson(average_ranks(x), average_ranks(y));
}

double spearman_pvalue_greater(const std::vector<double>& x,
                               const std::vector<double>& y, int n_perm,
                               std::uint64_t seed) {
  const double observed = spearman_rho(x, y);
  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);

  RngStream rng(seed);
  int at_least = 0;
  std::vector<double> shuffled = ry;
  for (int t = 0; t < n_perm; ++t) {
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1],
                shuffled[rng.uniform_int(static_cast<int>(i))]);
    }
    if (pearson(rx, shuffled) >= observed - 1e-15) ++at_least;
  }
  return (1.0 + at_least) / (1.0 + n_perm);
}

std::array<double, 2> bootstrap_mean_band(const std::vector<double>& values,
                                          int n_boot, std::uint64_t seed,
                                          double lo, double hi) {
  if (values.empty()) return {0.0, 0.0};
  const int n = static_cast<int>(values.size());
  RngStream rng(seed);
  std::vector<double> means(n_boot);
  for (int t = 0; t < n_boot; ++t) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += values[rng.uniform_int(n)];
    means[t] = sum / n;
  }
  std::sort(means.begin(), means.end());
  auto quantile = [&](double q) {
    const double pos = q * (n_boot - 1);
    const int k = static_cast<int>(pos);
    const double frac = pos - k;
    return k + 1 < n_boot ? means[k] * (1.0 - frac) + means[k + 1] * frac
                          : means[k];
  };
  return {quantile(lo), quantile(hi)};
}

}  // namespace acsel
