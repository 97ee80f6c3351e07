#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace acsel {

/// Ranks with ties resolved by averaging.
std::vector<double> average_ranks(const std::vector<double>& values);

/// Spearman rank correlation.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

/// One-sided permutation p-value for H1: rho > 0 (y shuffled n_perm times
/// with a seeded stream).
double spearman_pvalue_greater(const std::vector<double>& x,
                               const std::vector<double>& y, int n_perm,
                               std::uint64_t seed);

/// Percentile bootstrap band for the mean of `values` (n_boot resamples).
std::array<double, 2> bootstrap_mean_band(const std::vector<double>& values,
                                          int n_boot, std::uint64_t seed,
                                          double lo = 0.025, double hi = 0.975);

}  // namespace acsel
