#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expr.hpp"
#include "grid.hpp"

namespace meanlab {

// Nonsingular 2x2 change of generators: (f,g) -> (a*h + b*k, c*h + d*k).
struct EquivalenceWitness {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  double det() const { return a * d - b * c; }
};

EquivalenceWitness make_witness(double a, double b, double c, double d);

// Parameter pair (p, q) with p+q and pq real: real distinct roots, a real
// double root, or a conjugate pair a +- b*i with b != 0.
struct GiniParams {
  enum class Kind { real_distinct, real_equal, conjugate };
  Kind kind = Kind::real_distinct;
  double p = 0.0, q = 0.0;  // real variants (canonical order p >= q)
  double a = 0.0, b = 0.0;  // conjugate variant, b > 0

  double sum() const { return kind == Kind::conjugate ? 2.0 * a : p + q; }
  double product() const { return kind == Kind::conjugate ? a * a + b * b : p * q; }
  std::string describe() const;

  static GiniParams from_roots(double p, double q);
  static GiniParams conjugate_pair(double a, double b);
};

struct ChebyshevReport {
  int sign = 0;  // +1 positive system, -1 negative system, 0 violation
  double x = 0.0, y = 0.0, value = 0.0;  // witness of the violation when sign == 0
  bool ok() const { return sign != 0; }
};

// A pair (f, g) on an open interval with declared smoothness class (0..3).
// Immutable after construction; all member operations are pure.
class GeneratorPair {
 public:
  GeneratorPair(Expr f, Expr g, Interval interval, int smoothness = 3);

  const Expr& f() const { return f_; }
  const Expr& g() const { return g_; }
  const Interval& interval() const { return interval_; }
  int smoothness() const { return smoothness_; }

  // f(x)g(y) - g(x)f(y)
  double det(double x, double y) const;
  // mixed diagonal derivative of the determinant: f^(a)(x) g^(b)(y) - g^(a)(x) f^(b)(y)
  double det_partial(int a, int b, double x, double y) const;

  double wronskian(double x) const;
  double phi(double x) const;
  double psi(double x) const;
  double phi_prime(double x) const;   // needs smoothness >= 3
  double third_ratio(double x) const; // d1^3 D(x,x) / d1 D(x,x)

  ChebyshevReport is_chebyshev(std::span<const double> grid) const;
  const ChebyshevReport& chebyshev_default() const { return cheb_default_; }

  // true when g > 0 and f/g is strictly monotone on the default grid
  // (checked once at construction)
  bool normalized_form(std::string* why = nullptr) const;

  GeneratorPair transformed(const EquivalenceWitness& w) const;
  GeneratorPair dilated(double lambda) const;

  std::vector<double> default_grid(int n = 65) const { return chebyshev_grid(interval_, n); }

 private:
  void require_smoothness(int n, const char* op) const;
  double checked_wronskian(double x) const;  // throws errc::singular when it vanishes

  Expr f_, g_;
  Interval interval_;
  int smoothness_;
  ChebyshevReport cheb_default_;
  bool normalized_ = false;
  std::string normalized_why_;
};

// Solves the 4x4 anchor system pairA = T(pairB) at x1, x2 and verifies the
// candidate on the grid (values and first derivatives, relative residual
// <= 1e-8). Retries nearby anchors when the 2x2 block is singular.
std::optional<EquivalenceWitness> recover_witness(const GeneratorPair& pairA, const GeneratorPair& pairB,
                                                  double x1, double x2, std::span<const double> grid);

// The fundamental generator pair of the parameters on the given interval.
GeneratorPair make_gini_pair(const GiniParams& params, Interval interval);

// Admissibility window for the conjugate variant: I must sit inside
// (exp(-pi/(2|b|)), exp(pi/(2|b|))) so that cos(b log x) stays positive.
bool conjugate_window_ok(double b, const Interval& I);

}  // namespace meanlab
