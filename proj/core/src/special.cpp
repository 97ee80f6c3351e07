#include "acsel/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace acsel {

// I_v(x) = sum_k t_k with t_k = (x/2)^{2k+v} / (k! Gamma(k+v+1)). The terms
// rise to a single peak near k* and decay fast on both sides, so we locate
// the peak analytically, evaluate log t_{k*} once with lgamma, and sum the
// neighbours relative to the peak with the term ratio recurrence
// t_{k+1}/t_k = (x/2)^2 / ((k+1)(k+v+1)). This costs O(sqrt(x)) terms and
// stays accurate for any (v, x) in our range.
double log_bessel_i(double order, double x) {
  if (!(order >= 0.0) || !(x >= 0.0) || !std::isfinite(order) ||
      !std::isfinite(x)) {
    throw std::invalid_argument("log_bessel_i: need finite order >= 0, x >= 0");
  }
  if (x == 0.0) {
    return order == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }

  const double v = order;
  const double logxh = std::log(0.5 * x);
  const double q = 0.25 * x * x;  // (x/2)^2

  // Peak index: t_{k+1}/t_k = q / ((k+1)(k+v+1)) crosses 1 near k*.
  const double k_star_real =
      0.5 * (-(v + 1.0) + std::sqrt((v + 1.0) * (v + 1.0) + x * x));
  const long k_star = std::lround(std::max(0.0, k_star_real));

  const double log_tk =
      (2.0 * k_star + v) * logxh - std::lgamma(k_star + 1.0) -
      std::lgamma(k_star + v + 1.0);

  const double cutoff = 1e-18;
  double sum = 1.0;  // peak term relative to itself

  double term = 1.0;
  for (long k = k_star;; ++k) {
    term *= q / ((static_cast<double>(k) + 1.0) * (static_cast<double>(k) + v + 1.0));
    if (!(term > cutoff * sum)) break;
    sum += term;
  }
  term = 1.0;
  for (long k = k_star; k >= 1; --k) {
    term *= (static_cast<double>(k) * (static_cast<double>(k) + v)) / q;
    if (!(term > cutoff * sum)) break;
    sum += term;
  }

  return log_tk + std::log(sum);
}

}  // namespace acsel
