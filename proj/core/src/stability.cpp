#include "acsel/stability.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <vector>

#include "acsel/errors.hpp"
#include "acsel/parallel.hpp"
#include "acsel/rng.hpp"

namespace acsel {

namespace {

constexpr std::uint64_t kRetrySalt = 0x57AB1E5Eu;

std::vector<int> draw_subsample(int n, int size, RngStream& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < size; ++i) {
    const int j = i + rng.uniform_int(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SelectionMask select_on_subsample(const StandardizedDesign& sd,
                                  const Selector& select, int size,
                                  RngStream& rng) {
  const std::vector<int> rows =
      draw_subsample(static_cast<int>(sd.n()), size, rng);
  Dataset sub;
  sub.x.resize(size, sd.p());
  sub.y.resize(size);
  sub.names = sd.names;
  for (int i = 0; i < size; ++i) {
    sub.x.row(i) = sd.xs.row(rows[i]);
    sub.y[i] = sd.ys[rows[i]];
  }
  return select(standardize(sub));
}

}  // namespace

StabilityResult stability_selection(const StandardizedDesign& sd,
                                    const Selector& select, int b_sub,
                                    double frac, double pi_threshold,
                                    std::uint64_t seed, int jobs) {
  if (b_sub < 1) throw ParseError("stability_selection: B must be at least 1");
  if (!(frac > 0.0 && frac < 1.0)) {
    throw ParseError("stability_selection: frac must lie in (0, 1)");
  }
  if (!(pi_threshold > 0.5 && pi_threshold <= 1.0)) {
    throw ParseError("stability_selection: pi threshold must lie in (0.5, 1]");
  }
  const int size = static_cast<int>(frac * static_cast<double>(sd.n()));
  if (size < 3) {
    throw SubsampleTooSmallError(
        "stability_selection: subsample size " + std::to_string(size) +
        " is below 3");
  }

  const Eigen::Index p = sd.p();
  std::vector<int> counts(p, 0);
  std::mutex merge_mutex;

  auto run_one = [&](int b) -> SelectionMask {
    RngStream stream(derive_seed(seed, static_cast<std::uint64_t>(b)));
    try {
      return select_on_subsample(sd, select, size, stream);
    } catch (const Error&) {
      RngStream retry(
          derive_seed(seed, static_cast<std::uint64_t>(b), kRetrySalt));
      return select_on_subsample(sd, select, size, retry);
    }
  };

  if (jobs <= 1) {
    for (int b = 0; b < b_sub; ++b) {
      const SelectionMask mask = run_one(b);
      for (Eigen::Index j = 0; j < p; ++j) counts[j] += mask[j] ? 1 : 0;
    }
  } else {
    parallel_for(b_sub, jobs, [&](int b) {
      const SelectionMask mask = run_one(b);
      std::lock_guard<std::mutex> lock(merge_mutex);
      for (Eigen::Index j = 0; j < p; ++j) counts[j] += mask[j] ? 1 : 0;
    });
  }

  StabilityResult out;
  out.b_used = b_sub;
  out.probs.resize(p);
  out.mask.assign(p, 0);
  for (Eigen::Index j = 0; j < p; ++j) {
    out.probs[j] = static_cast<double>(counts[j]) / static_cast<double>(b_sub);
    if (out.probs[j] >= pi_threshold - 1e-12) out.mask[j] = 1;
  }
  return out;
}

}  // namespace acsel
