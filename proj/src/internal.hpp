#pragma once

#include <cfloat>
#include <cmath>

namespace heunkit::detail {

// A sum of double-valued terms whose exact value is zero (a terminating
// Pochhammer factor) usually lands a few ulps away from it.
inline long double snap_zero(long double v, long double scale) {
  return std::fabs(v) <= 8.0L * DBL_EPSILON * scale ? 0.0L : v;
}

}  // namespace heunkit::detail
