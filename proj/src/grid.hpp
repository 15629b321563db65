#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace meanlab {

// Open real interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const { return x > lo && x < hi; }
  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }

  void require(double x, const char* what) const {
    if (!std::isfinite(x) || !contains(x))
      fail(errc::domain, std::string(what) + " = " + std::to_string(x) + " outside interval (" +
                             std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
};

inline Interval make_interval(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    fail(errc::invalid_argument, "interval endpoints must be finite with lo < hi");
  return {lo, hi};
}

// Chebyshev-spaced sample points inside the compact subinterval obtained by
// insetting 5% of the width at each end. Endpoint singularities of catalog
// functions (log, negative powers) stay out of every sampled grid this way.
inline std::vector<double> chebyshev_grid(const Interval& I, int n) {
  if (n < 2) fail(errc::invalid_argument, "grid needs at least 2 points");
  const double inset = 0.05 * I.width();
  const double lo = I.lo + inset;
  const double hi = I.hi - inset;
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) {
    // second-kind nodes, descending in cos; filled in reverse to sort ascending
    g[n - 1 - k] = c + h * std::cos(M_PI * k / (n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace meanlab
