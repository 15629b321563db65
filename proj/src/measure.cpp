#include "measure.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace meanlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) fail(errc::invalid_argument, "quadrature needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= 1e-15) break;
    }
    nodes[i - 1] = -z;
    nodes[n - i] = z;
    weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[n - i] = weights[i - 1];
  }
}

Measure::Measure(ParamSet ps, std::vector<double> nodes, std::vector<double> weights, std::string kind,
                 int label_count)
    : param_set_(ps),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      kind_(std::move(kind)),
      label_count_(label_count) {
  if (nodes_.empty() || nodes_.size() != weights_.size())
    fail(errc::invalid_argument, "measure needs matching nonempty node and weight lists");
  double total = 0.0;
  for (size_t k = 0; k < nodes_.size(); ++k) {
    if (!std::isfinite(nodes_[k])) fail(errc::invalid_argument, "measure node must be finite");
    if (param_set_ == ParamSet::unit_interval && (nodes_[k] < 0.0 || nodes_[k] > 1.0))
      fail(errc::invalid_argument, "measure node " + fmt(nodes_[k]) + " outside [0, 1]");
    if (!(weights_[k] >= 0.0)) fail(errc::invalid_argument, "measure weights must be nonnegative");
    total += weights_[k];
  }
  // tolerate benign rounding in job files, reject genuinely wrong inputs
  if (std::fabs(total - 1.0) > 1e-10)
    fail(errc::invalid_argument, "measure weights sum to " + fmt(total) + ", not a probability measure");
  if (total != 1.0) {
    for (double& w : weights_) w /= total;
  }
}

Measure Measure::two_point(double s) {
  if (!(s > 0.0 && s < 1.0)) fail(errc::invalid_argument, "two-point measure needs s in (0, 1)");
  return Measure(ParamSet::unit_interval, {0.0, 1.0}, {1.0 - s, s}, "two_point(" + fmt(s) + ")");
}

Measure Measure::uniform_quadrature(int n) {
  if (n < 2) fail(errc::invalid_argument, "uniform quadrature needs at least 2 nodes");
  std::vector<double> z, w;
  gauss_legendre(n, z, w);
  std::vector<double> nodes(n), weights(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = 0.5 * (z[k] + 1.0);
    weights[k] = 0.5 * w[k];
  }
  return Measure(ParamSet::unit_interval, std::move(nodes), std::move(weights),
                 "quadrature(uniform, " + std::to_string(n) + ")");
}

Measure Measure::counting(int d) {
  if (d < 1) fail(errc::invalid_argument, "counting measure needs d >= 1");
  std::vector<double> nodes(d), weights(d, 1.0 / d);
  for (int k = 0; k < d; ++k) nodes[k] = k + 1;
  return Measure(ParamSet::labels, std::move(nodes), std::move(weights),
                 "counting(" + std::to_string(d) + ")", d);
}

Measure Measure::labels_weighted(std::vector<double> weights) {
  const int d = static_cast<int>(weights.size());
  if (d < 1) fail(errc::invalid_argument, "label measure needs at least one weight");
  std::vector<double> nodes(d);
  for (int k = 0; k < d; ++k) nodes[k] = k + 1;
  return Measure(ParamSet::labels, std::move(nodes), std::move(weights),
                 "labels(" + std::to_string(d) + ")", d);
}

Measure Measure::dirac_mix(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) fail(errc::invalid_argument, "dirac mix needs at least one atom");
  std::vector<double> nodes, weights;
  nodes.reserve(atoms.size());
  weights.reserve(atoms.size());
  for (const auto& [t, w] : atoms) {
    nodes.push_back(t);
    weights.push_back(w);
  }
  return Measure(ParamSet::unit_interval, std::move(nodes), std::move(weights), "dirac_mix");
}

double Measure::integrate(const std::function<double(double)>& phi) const {
  double s = 0.0;
  for (size_t k = 0; k < nodes_.size(); ++k) {
    const double v = phi(nodes_[k]);
    if (!std::isfinite(v))
      fail(errc::numerical, "integrand not finite at node t = " + fmt(nodes_[k]) + " (index " +
                                std::to_string(k) + ")");
    s += weights_[k] * v;
  }
  return s;
}

double Measure::first_moment() const {
  if (param_set_ != ParamSet::unit_interval)
    fail(errc::capability, "moments are defined for measures on [0, 1], not finite label sets");
  return integrate([](double t) { return t; });
}

double Measure::central_moment(int n) const {
  if (param_set_ != ParamSet::unit_interval)
    fail(errc::capability, "moments are defined for measures on [0, 1], not finite label sets");
  if (n < 1) fail(errc::invalid_argument, "central moment order must be positive");
  const double m1 = first_moment();
  return integrate([&](double t) { return std::pow(t - m1, n); });
}

}  // namespace meanlab
