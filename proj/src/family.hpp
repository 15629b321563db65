#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "expr.hpp"
#include "measure.hpp"

namespace meanlab {

struct NondegeneracyReport {
  double mt1_mass = 0.0;              // mu-mass of nodes where all centered partials vanish
  std::array<int, 3> mt0_triple{};    // 1-based indices of the maximizing triple
  double mt0_value = 0.0;             // <d_i* d_j* d_l*>_mu at the triple
  bool mt1_ok = false;
  bool mt0_ok = false;
  bool satisfied = false;
};

// Measurable family of d-variable means m(x, t), affine in x for all built-in
// variants, with exact partials. Immutable and pure.
class MeanFamily {
 public:
  enum class Kind { two_point, projection, weighted_arithmetic };

  static MeanFamily two_point();          // d = 2, m((x,y),t) = t*x + (1-t)*y on T = [0,1]
  static MeanFamily projection(int d);    // T = {1..d}, m(x,t) = x_t
  static MeanFamily weighted_arithmetic(std::vector<Expr> phis);  // T = [0,1]
  static MeanFamily weighted_arithmetic_table(std::vector<std::vector<double>> rows);  // finite T

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  ParamSet param_set() const { return param_set_; }
  int label_count() const { return label_count_; }
  bool homogeneous() const { return true; }  // all built-ins are affine with unit coefficient sum
  std::string describe() const;

  double eval(std::span<const double> x, double t) const;
  double partial(int i, std::span<const double> x, double t) const;  // i is 1-based
  double second_partial(int i, int j, std::span<const double> x, double t) const;
  double third_partial(int i, int j, int l, std::span<const double> x, double t) const;
  double centered_partial(const Measure& mu, int i, std::span<const double> x, double t) const;

  NondegeneracyReport nondegeneracy(const Measure& mu, double x) const;

  // throws when the measure's parameter set does not match, or when the
  // weighted-arithmetic coefficient functions misbehave at the nodes
  void validate_measure(const Measure& mu) const;

 private:
  MeanFamily() = default;
  double coefficient(int i, double t) const;  // d(m)/d(x_i), independent of x
  void check_point(std::span<const double> x) const;
  void check_node(double t) const;

  Kind kind_ = Kind::two_point;
  int dim_ = 2;
  ParamSet param_set_ = ParamSet::unit_interval;
  int label_count_ = 0;
  std::vector<Expr> phis_;                      // weighted_arithmetic on [0,1]
  std::vector<std::vector<double>> phi_rows_;   // weighted_arithmetic on labels
};

}  // namespace meanlab
