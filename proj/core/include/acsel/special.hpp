#pragma once

namespace acsel {

/// log I_v(x) for the modified Bessel function of the first kind, v >= 0,
/// x >= 0. Works in log space so large arguments (x up to ~1e6) do not
/// overflow. Returns -inf for x == 0 when v > 0.
double log_bessel_i(double order, double x);

}  // namespace acsel
