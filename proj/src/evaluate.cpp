#include "evaluate.hpp"

#include <algorithm>
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

struct MeanSamples {
  std::vector<double> values;  // m(x, t_k) per measure node
  double lo = 0.0, hi = 0.0;
};

MeanSamples sample_family(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                          std::span<const double> x) {
  fam.validate_measure(mu);
  if (static_cast<int>(x.size()) != fam.dim())
    fail(errc::invalid_argument, "point dimension does not match the family");
  for (double xi : x) pair.interval().require(xi, "x_i");
  MeanSamples s;
  s.values.reserve(mu.size());
  for (double t : mu.nodes()) s.values.push_back(fam.eval(x, t));
  s.lo = *std::min_element(s.values.begin(), s.values.end());
  s.hi = *std::max_element(s.values.begin(), s.values.end());
  return s;
}

MeanSamples sample_family_open(const MeanFamily& fam, const Measure& mu, std::span<const double> x) {
  fam.validate_measure(mu);
  if (static_cast<int>(x.size()) != fam.dim())
    fail(errc::invalid_argument, "point dimension does not match the family");
  MeanSamples s;
  s.values.reserve(mu.size());
  for (double t : mu.nodes()) s.values.push_back(fam.eval(x, t));
  s.lo = *std::min_element(s.values.begin(), s.values.end());
  s.hi = *std::max_element(s.values.begin(), s.values.end());
  return s;
}

}  // namespace

double eval_implicit(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                     std::span<const double> x) {
  const auto& cheb = pair.chebyshev_default();
  if (!cheb.ok())
    fail(errc::invalid_argument, "pair is not a Chebyshev system on the working grid: D(" + fmt(cheb.x) +
                                     ", " + fmt(cheb.y) + ") = " + fmt(cheb.value));
  const MeanSamples s = sample_family(pair, fam, mu, x);
  if (s.lo == s.hi) return s.lo;

  const Expr& f = pair.f();
  const Expr& g = pair.g();
  const auto& w = mu.weights();
  auto residual = [&](double y) {
    const double fy = f.value(y), gy = g.value(y);
    double r = 0.0;
    for (size_t k = 0; k < s.values.size(); ++k)
      r += w[k] * (f.value(s.values[k]) * gy - g.value(s.values[k]) * fy);
    return r;
  };
  return bisect_root(residual, s.lo, s.hi);
}

double eval_explicit(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                     std::span<const double> x) {
  std::string why;
  if (!pair.normalized_form(&why))
    fail(errc::invalid_argument,
         "pair is not in normalized form (" + why + "); supply an equivalent pair with g > 0");
  const MeanSamples s = sample_family(pair, fam, mu, x);
  if (s.lo == s.hi) return s.lo;

  const Expr& f = pair.f();
  const Expr& g = pair.g();
  const auto& w = mu.weights();
  double a = 0.0, b = 0.0;  // <f o m>, <g o m>
  for (size_t k = 0; k < s.values.size(); ++k) {
    a += w[k] * f.value(s.values[k]);
    b += w[k] * g.value(s.values[k]);
  }
  if (b == 0.0) fail(errc::numerical, "<g o m> vanished");
  const double target = a / b;

  auto ratio = [&](double y) { return f.value(y) / g.value(y); };
  const double rlo = ratio(s.lo), rhi = ratio(s.hi);
  const double rmin = std::min(rlo, rhi), rmax = std::max(rlo, rhi);
  const double slack = 1e-9 * (1.0 + std::fabs(target));
  if (target < rmin - slack || target > rmax + slack)
    fail(errc::numerical, "ratio target " + fmt(target) + " falls outside [" + fmt(rmin) + ", " +
                              fmt(rmax) + "] spanned by the mean values");
  if (target <= rmin) return rlo <= rhi ? s.lo : s.hi;
  if (target >= rmax) return rlo <= rhi ? s.hi : s.lo;
  return bisect_root([&](double y) { return ratio(y) - target; }, s.lo, s.hi);
}

double eval_quasi_arithmetic(const Expr& f, const Interval& I, const MeanFamily& fam, const Measure& mu,
                             std::span<const double> x) {
  // strict monotonicity: f' keeps one sign on the working grid
  int sign = 0;
  for (double u : chebyshev_grid(I, 65)) {
    const double d = f.deriv(u, 1);
    const int s = (std::fabs(d) > 1e-14 * (1.0 + std::fabs(f.value(u)))) ? (d > 0.0 ? 1 : -1) : 0;
    if (s == 0 || (sign != 0 && s != sign))
      fail(errc::invalid_argument, "f is not strictly monotone on I (f' changes sign near x = " + fmt(u) + ")");
    sign = s;
  }
  for (double xi : x) I.require(xi, "x_i");
  const MeanSamples s = sample_family_open(fam, mu, x);
  if (s.lo == s.hi) return s.lo;
  double a = 0.0;
  for (size_t k = 0; k < s.values.size(); ++k) a += mu.weights()[k] * f.value(s.values[k]);
  return bisect_root([&](double y) { return f.value(y) - a; }, s.lo, s.hi);
}

double eval_weighted_qa(const Expr& f, const Interval& I, std::span<const double> x,
                        std::span<const double> t) {
  if (x.size() != t.size() || x.empty())
    fail(errc::invalid_argument, "weighted mean needs matching nonempty points and weights");
  double sum = 0.0;
  for (double ti : t) {
    if (!(ti >= 0.0)) fail(errc::invalid_argument, "weights off the simplex: negative entry");
    sum += ti;
  }
  if (std::fabs(sum - 1.0) > 1e-10)
    fail(errc::invalid_argument, "weights off the simplex: sum = " + fmt(sum));
  for (double xi : x) I.require(xi, "x_i");

  double a = 0.0;
  for (size_t i = 0; i < x.size(); ++i) a += (t[i] / sum) * f.value(x[i]);
  const double lo = *std::min_element(x.begin(), x.end());
  const double hi = *std::max_element(x.begin(), x.end());
  if (lo == hi) return lo;
  return bisect_root([&](double y) { return f.value(y) - a; }, lo, hi);
}

namespace {

double gini_from_samples(const GiniParams& params, std::span<const double> m,
                         std::span<const double> w, double* conj_denominator) {
  for (double v : m)
    if (!(v > 0.0)) fail(errc::domain, "Gini means need positive mean values, got " + fmt(v));
  switch (params.kind) {
    case GiniParams::Kind::real_distinct: {
      double up = 0.0, uq = 0.0;
      for (size_t k = 0; k < m.size(); ++k) {
        up += w[k] * std::pow(m[k], params.p);
        uq += w[k] * std::pow(m[k], params.q);
      }
      return std::pow(up / uq, 1.0 / (params.p - params.q));
    }
    case GiniParams::Kind::real_equal: {
      double num = 0.0, den = 0.0;
      for (size_t k = 0; k < m.size(); ++k) {
        const double mp = std::pow(m[k], params.p);
        num += w[k] * mp * std::log(m[k]);
        den += w[k] * mp;
      }
      return std::exp(num / den);
    }
    case GiniParams::Kind::conjugate: {
      const double hw = M_PI / (2.0 * params.b);
      double snum = 0.0, cden = 0.0;
      for (size_t k = 0; k < m.size(); ++k) {
        const double lm = std::log(m[k]);
        if (!(lm > -hw && lm < hw))
          fail(errc::domain, "mean value " + fmt(m[k]) + " outside the admissibility window (exp(" +
                                 fmt(-hw) + "), exp(" + fmt(hw) + "))");
        const double ma = std::pow(m[k], params.a);
        snum += w[k] * ma * std::sin(params.b * lm);
        cden += w[k] * ma * std::cos(params.b * lm);
      }
      if (conj_denominator) *conj_denominator = cden;
      if (!(cden > 0.0)) fail(errc::numerical, "<m^a cos(b log m)> = " + fmt(cden) + " not positive");
      return std::exp(std::atan(snum / cden) / params.b);
    }
  }
  fail(errc::invalid_argument, "corrupt Gini parameters");
}

}  // namespace

double eval_gini_closed(const GiniParams& params, const MeanFamily& fam, const Measure& mu,
                        std::span<const double> x, double* conj_denominator) {
  const MeanSamples s = sample_family_open(fam, mu, x);
  return gini_from_samples(params, s.values, mu.weights(), conj_denominator);
}

double eval_holder(double p, const MeanFamily& fam, const Measure& mu, std::span<const double> x) {
  for (double xi : x)
    if (!(xi > 0.0)) fail(errc::domain, "Holder means need positive inputs");
  const MeanSamples s = sample_family_open(fam, mu, x);
  if (p == 0.0) {
    double acc = 0.0;
    for (size_t k = 0; k < s.values.size(); ++k) acc += mu.weights()[k] * std::log(s.values[k]);
    return std::exp(acc);
  }
  double acc = 0.0;
  for (size_t k = 0; k < s.values.size(); ++k) acc += mu.weights()[k] * std::pow(s.values[k], p);
  return std::pow(acc, 1.0 / p);
}

double eval_gini_discrete(const GiniParams& params, std::span<const double> x,
                          std::span<const double> weights) {
  if (x.empty()) fail(errc::invalid_argument, "discrete Gini mean needs at least one value");
  std::vector<double> w;
  if (weights.empty()) {
    w.assign(x.size(), 1.0 / static_cast<double>(x.size()));
  } else {
    if (weights.size() != x.size())
      fail(errc::invalid_argument, "discrete Gini mean needs one weight per value");
    double sum = 0.0;
    for (double wi : weights) {
      if (!(wi >= 0.0)) fail(errc::invalid_argument, "weights off the simplex: negative entry");
      sum += wi;
    }
    if (std::fabs(sum - 1.0) > 1e-10)
      fail(errc::invalid_argument, "weights off the simplex: sum = " + fmt(sum));
    w.reserve(weights.size());
    for (double wi : weights) w.push_back(wi / sum);
  }
  return gini_from_samples(params, x, w, nullptr);
}

}  // namespace meanlab
