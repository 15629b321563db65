#pragma once

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace meanlab {

// Root of fn on [lo, hi] by bracketing bisection. Iterates until the bracket
// cannot be split further in double precision (at most max_iter halvings),
// which keeps the final bracket width comfortably below 1e-13 relative.
// Endpoints get one 1-ulp expansion before a missing sign change is reported
// as a numerical failure.
template <class F>
double bisect_root(F&& fn, double lo, double hi, int max_iter = 200) {
  if (!(lo <= hi)) fail(errc::invalid_argument, "bisection bracket is inverted");
  if (lo == hi) return lo;
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    const double lo2 = std::nextafter(lo, -INFINITY);
    const double hi2 = std::nextafter(hi, INFINITY);
    const double flo2 = fn(lo2);
    const double fhi2 = fn(hi2);
    if (flo2 == 0.0) return lo2;
    if (fhi2 == 0.0) return hi2;
    if ((flo2 > 0.0) == (fhi2 > 0.0)) {
      std::ostringstream os;
      os << "no sign change on bracket [" << lo << ", " << hi << "]: residuals " << flo2 << ", " << fhi2;
      fail(errc::numerical, os.str());
    }
    lo = lo2;
    hi = hi2;
    flo = flo2;
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // bracket no longer splittable
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace meanlab
