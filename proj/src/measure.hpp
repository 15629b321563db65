#pragma once

#include <functional>
#include <string>
#include <vector>

namespace meanlab {

// Parameter set the measure lives on: the unit interval [0,1] or the finite
// label set {1, ..., d}.
enum class ParamSet { unit_interval, labels };

// Probability measure as a finite weighted node set. Continuous measures
// enter only through quadrature node sets fixed at construction time, so
// every downstream integral is an exact finite sum.
class Measure {
 public:
  static Measure two_point(double s);               // (1-s)*delta_0 + s*delta_1
  static Measure uniform_quadrature(int n);         // Gauss-Legendre on [0,1]
  static Measure counting(int d);                   // (delta_1 + ... + delta_d)/d
  static Measure labels_weighted(std::vector<double> weights);  // labels 1..d, custom weights
  static Measure dirac_mix(std::vector<std::pair<double, double>> atoms);  // (node, weight) on [0,1]

  ParamSet param_set() const { return param_set_; }
  int label_count() const { return label_count_; }
  size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& kind() const { return kind_; }

  double integrate(const std::function<double(double)>& phi) const;
  double first_moment() const;
  double central_moment(int n) const;

 private:
  Measure(ParamSet ps, std::vector<double> nodes, std::vector<double> weights, std::string kind,
          int label_count = 0);

  ParamSet param_set_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::string kind_;
  int label_count_ = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace meanlab
