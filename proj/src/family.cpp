#include "family.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace meanlab {

namespace {

constexpr double kVanishTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

int label_of(double t) {
  const double r = std::round(t);
  if (std::fabs(t - r) > 1e-9) fail(errc::invalid_argument, "label node must be integral, got " + fmt(t));
  return static_cast<int>(r);
}

}  // namespace

MeanFamily MeanFamily::two_point() {
  MeanFamily f;
  f.kind_ = Kind::two_point;
  f.dim_ = 2;
  f.param_set_ = ParamSet::unit_interval;
  return f;
}

MeanFamily MeanFamily::projection(int d) {
  if (d < 1) fail(errc::invalid_argument, "projection family needs d >= 1");
  MeanFamily f;
  f.kind_ = Kind::projection;
  f.dim_ = d;
  f.param_set_ = ParamSet::labels;
  f.label_count_ = d;
  return f;
}

MeanFamily MeanFamily::weighted_arithmetic(std::vector<Expr> phis) {
  if (phis.size() < 2) fail(errc::invalid_argument, "weighted arithmetic family needs >= 2 coefficients");
  MeanFamily f;
  f.kind_ = Kind::weighted_arithmetic;
  f.dim_ = static_cast<int>(phis.size());
  f.param_set_ = ParamSet::unit_interval;
  f.phis_ = std::move(phis);
  return f;
}

MeanFamily MeanFamily::weighted_arithmetic_table(std::vector<std::vector<double>> rows) {
  if (rows.size() < 2) fail(errc::invalid_argument, "weighted arithmetic family needs >= 2 coefficients");
  const size_t labels = rows.front().size();
  if (labels < 1) fail(errc::invalid_argument, "coefficient table needs at least one label column");
  for (const auto& r : rows)
    if (r.size() != labels) fail(errc::invalid_argument, "coefficient table rows must have equal length");
  MeanFamily f;
  f.kind_ = Kind::weighted_arithmetic;
  f.dim_ = static_cast<int>(rows.size());
  f.param_set_ = ParamSet::labels;
  f.label_count_ = static_cast<int>(labels);
  f.phi_rows_ = std::move(rows);
  return f;
}

std::string MeanFamily::describe() const {
  switch (kind_) {
    case Kind::two_point: return "two_point";
    case Kind::projection: return "projection(" + std::to_string(dim_) + ")";
    case Kind::weighted_arithmetic: return "weighted_arithmetic(d=" + std::to_string(dim_) + ")";
  }
  return "?";
}

void MeanFamily::check_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    fail(errc::invalid_argument, "point has " + std::to_string(x.size()) + " coordinates, family needs " +
                                     std::to_string(dim_));
  for (double xi : x)
    if (!std::isfinite(xi)) fail(errc::invalid_argument, "point coordinates must be finite");
}

void MeanFamily::check_node(double t) const {
  if (param_set_ == ParamSet::unit_interval) {
    if (!(t >= 0.0 && t <= 1.0)) fail(errc::invalid_argument, "node t = " + fmt(t) + " outside [0, 1]");
  } else {
    const int l = label_of(t);
    if (l < 1 || l > label_count_)
      fail(errc::invalid_argument, "label " + std::to_string(l) + " outside {1..," +
                                       std::to_string(label_count_) + "}");
  }
}

double MeanFamily::coefficient(int i, double t) const {
  switch (kind_) {
    case Kind::two_point: return (i == 1) ? t : 1.0 - t;
    case Kind::projection: return (label_of(t) == i) ? 1.0 : 0.0;
    case Kind::weighted_arithmetic:
      if (param_set_ == ParamSet::unit_interval) return phis_[i - 1].value(t);
      return phi_rows_[i - 1][label_of(t) - 1];
  }
  fail(errc::invalid_argument, "corrupt family");
}

double MeanFamily::eval(std::span<const double> x, double t) const {
  check_point(x);
  check_node(t);
  double s = 0.0;
  for (int i = 1; i <= dim_; ++i) s += coefficient(i, t) * x[i - 1];
  return s;
}

double MeanFamily::partial(int i, std::span<const double> x, double t) const {
  if (i < 1 || i > dim_) fail(errc::invalid_argument, "partial index out of range");
  check_point(x);
  check_node(t);
  return coefficient(i, t);
}

double MeanFamily::second_partial(int i, int j, std::span<const double> x, double t) const {
  if (i < 1 || i > dim_ || j < 1 || j > dim_) fail(errc::invalid_argument, "partial index out of range");
  check_point(x);
  check_node(t);
  return 0.0;  // all built-in variants are affine in x
}

double MeanFamily::third_partial(int i, int j, int l, std::span<const double> x, double t) const {
  if (i < 1 || i > dim_ || j < 1 || j > dim_ || l < 1 || l > dim_)
    fail(errc::invalid_argument, "partial index out of range");
  check_point(x);
  check_node(t);
  return 0.0;
}

double MeanFamily::centered_partial(const Measure& mu, int i, std::span<const double> x, double t) const {
  validate_measure(mu);
  const double avg = mu.integrate([&](double s) { return partial(i, x, s); });
  return partial(i, x, t) - avg;
}

NondegeneracyReport MeanFamily::nondegeneracy(const Measure& mu, double x) const {
  validate_measure(mu);
  const std::vector<double> diag(static_cast<size_t>(dim_), x);
  const std::span<const double> xd(diag);

  std::vector<double> avg(dim_ + 1, 0.0);
  for (int i = 1; i <= dim_; ++i)
    avg[i] = mu.integrate([&](double s) { return partial(i, xd, s); });

  // centered partials per node
  const auto& nodes = mu.nodes();
  const auto& weights = mu.weights();
  std::vector<std::vector<double>> c(nodes.size(), std::vector<double>(dim_ + 1, 0.0));
  for (size_t k = 0; k < nodes.size(); ++k)
    for (int i = 1; i <= dim_; ++i) c[k][i] = partial(i, xd, nodes[k]) - avg[i];

  NondegeneracyReport rep;
  for (size_t k = 0; k < nodes.size(); ++k) {
    bool all_vanish = true;
    for (int i = 1; i <= dim_ && all_vanish; ++i)
      if (std::fabs(c[k][i]) > kVanishTol) all_vanish = false;
    if (all_vanish) rep.mt1_mass += weights[k];
  }
  rep.mt1_ok = rep.mt1_mass < 1.0 - kVanishTol;

  double best = -1.0;
  for (int i = 1; i <= dim_; ++i)
    for (int j = i; j <= dim_; ++j)
      for (int l = j; l <= dim_; ++l) {
        double v = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k) v += weights[k] * c[k][i] * c[k][j] * c[k][l];
        if (std::fabs(v) > best) {
          best = std::fabs(v);
          rep.mt0_triple = {i, j, l};
          rep.mt0_value = v;
        }
      }
  rep.mt0_ok = std::fabs(rep.mt0_value) > kVanishTol;
  rep.satisfied = rep.mt1_ok && rep.mt0_ok;
  return rep;
}

void MeanFamily::validate_measure(const Measure& mu) const {
  if (mu.param_set() != param_set_)
    fail(errc::invalid_argument, "family " + describe() + " and measure " + mu.kind() +
                                     " live on different parameter sets");
  if (param_set_ == ParamSet::labels && mu.label_count() != label_count_)
    fail(errc::invalid_argument, "family needs " + std::to_string(label_count_) + " labels, measure has " +
                                     std::to_string(mu.label_count()));
  if (kind_ == Kind::weighted_arithmetic) {
    for (double t : mu.nodes()) {
      double sum = 0.0;
      for (int i = 1; i <= dim_; ++i) {
        const double v = coefficient(i, t);
        if (v < -1e-12 || v > 1.0 + 1e-12)
          fail(errc::invalid_argument, "coefficient phi_" + std::to_string(i) + "(" + fmt(t) +
                                           ") = " + fmt(v) + " outside [0, 1]");
        sum += v;
      }
      if (std::fabs(sum - 1.0) > 1e-12)
        fail(errc::invalid_argument, "coefficients sum to " + fmt(sum) + " at node t = " + fmt(t));
    }
  }
}

}  // namespace meanlab
