#pragma once

#include <cmath>

namespace meanlab {

// Truncated Taylor data of a scalar function at a point: value and the first
// three derivatives. All expression-tree evaluation propagates these exactly,
// so downstream invariants never inherit finite-difference noise.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

inline Jet operator+(const Jet& a, const Jet& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet operator*(double c, const Jet& a) { return {c * a.v, c * a.d1, c * a.d2, c * a.d3}; }

// Leibniz rule to order three.
inline Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  r.d1 = a.d1 * b.v + a.v * b.d1;
  r.d2 = a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2;
  r.d3 = a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3;
  return r;
}

// Faa di Bruno to order three: `outer` holds f and its derivatives at u.v,
// `u` holds the inner function's jet in x. Result is the jet of f(u(x)).
inline Jet jet_chain(const Jet& outer, const Jet& u) {
  Jet r;
  r.v = outer.v;
  r.d1 = outer.d1 * u.d1;
  r.d2 = outer.d2 * u.d1 * u.d1 + outer.d1 * u.d2;
  r.d3 = outer.d3 * u.d1 * u.d1 * u.d1 + 3.0 * outer.d2 * u.d1 * u.d2 + outer.d1 * u.d3;
  return r;
}

}  // namespace meanlab
