#include "chebyshev.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace meanlab {

namespace {

constexpr double kWronskianVanishRel = 1e-12;
constexpr double kDetVanishRel = 1e-13;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

EquivalenceWitness make_witness(double a, double b, double c, double d) {
  EquivalenceWitness w{a, b, c, d};
  const double scale = std::fabs(a * d) + std::fabs(b * c);
  if (!(std::fabs(w.det()) > 1e-14 * (1.0 + scale)))
    fail(errc::invalid_argument, "witness matrix is singular (a*d - b*c = " + fmt(w.det()) + ")");
  return w;
}

std::string GiniParams::describe() const {
  switch (kind) {
    case Kind::real_distinct: return "(p, q) = (" + fmt(p) + ", " + fmt(q) + ")";
    case Kind::real_equal: return "p = q = " + fmt(p);
    case Kind::conjugate: return "p = conj(q) = " + fmt(a) + " + " + fmt(b) + "i";
  }
  return "?";
}

GiniParams GiniParams::from_roots(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) fail(errc::invalid_argument, "Gini parameters must be finite");
  GiniParams r;
  // the power-ratio branch loses precision as 1/(p-q) blows up
  if (std::fabs(p - q) < 1e-8) {
    r.kind = Kind::real_equal;
    r.p = r.q = 0.5 * (p + q);
  } else {
    r.kind = Kind::real_distinct;
    r.p = std::max(p, q);
    r.q = std::min(p, q);
  }
  return r;
}

GiniParams GiniParams::conjugate_pair(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || b == 0.0)
    fail(errc::invalid_argument, "conjugate Gini parameters need b != 0");
  GiniParams r;
  r.kind = Kind::conjugate;
  r.a = a;
  r.b = std::fabs(b);
  return r;
}

GeneratorPair::GeneratorPair(Expr f, Expr g, Interval interval, int smoothness)
    : f_(std::move(f)), g_(std::move(g)), interval_(interval), smoothness_(smoothness) {
  if (!f_.valid() || !g_.valid()) fail(errc::invalid_argument, "generator pair needs both f and g");
  if (smoothness_ < 0 || smoothness_ > 3)
    fail(errc::invalid_argument, "smoothness class must be one of 0, 1, 2, 3");
  const auto grid = default_grid();
  int wsign = 0;
  normalized_ = true;
  for (double x : grid) {
    const Jet jf = f_.jet(x);
    const Jet jg = g_.jet(x);
    if (!std::isfinite(jf.v) || !std::isfinite(jg.v) || !std::isfinite(jf.d3) || !std::isfinite(jg.d3))
      fail(errc::invalid_argument, "generator pair not finite at x = " + fmt(x));
    if (!normalized_) continue;
    if (!(jg.v > 0.0)) {
      normalized_ = false;
      normalized_why_ = "g(x) <= 0 at x = " + fmt(x);
      continue;
    }
    const double w = jf.d1 * jg.v - jg.d1 * jf.v;
    const double scale = std::fabs(jf.d1 * jg.v) + std::fabs(jg.d1 * jf.v);
    const int s = (std::fabs(w) > kWronskianVanishRel * scale) ? (w > 0.0 ? 1 : -1) : 0;
    if (s == 0 || (wsign != 0 && s != wsign)) {
      normalized_ = false;
      normalized_why_ = "(f/g)' loses its sign at x = " + fmt(x);
      continue;
    }
    wsign = s;
  }
  cheb_default_ = is_chebyshev(grid);
}

void GeneratorPair::require_smoothness(int n, const char* op) const {
  if (smoothness_ < n)
    fail(errc::capability, std::string(op) + " needs smoothness >= " + std::to_string(n) +
                               ", pair declared C_" + std::to_string(smoothness_));
}

double GeneratorPair::det(double x, double y) const {
  interval_.require(x, "x");
  interval_.require(y, "y");
  return f_.value(x) * g_.value(y) - g_.value(x) * f_.value(y);
}

double GeneratorPair::det_partial(int a, int b, double x, double y) const {
  if (a < 0 || a > 3 || b < 0 || b > 3) fail(errc::capability, "determinant partials available to order 3");
  require_smoothness(std::max(a, b), "det_partial");
  interval_.require(x, "x");
  interval_.require(y, "y");
  return f_.deriv(x, a) * g_.deriv(y, b) - g_.deriv(x, a) * f_.deriv(y, b);
}

double GeneratorPair::wronskian(double x) const {
  require_smoothness(1, "wronskian");
  interval_.require(x, "x");
  const Jet jf = f_.jet(x);
  const Jet jg = g_.jet(x);
  return jf.d1 * jg.v - jg.d1 * jf.v;
}

double GeneratorPair::checked_wronskian(double x) const {
  const Jet jf = f_.jet(x);
  const Jet jg = g_.jet(x);
  const double w = jf.d1 * jg.v - jg.d1 * jf.v;
  const double scale = std::fabs(jf.d1 * jg.v) + std::fabs(jg.d1 * jf.v);
  if (std::fabs(w) <= kWronskianVanishRel * scale)
    fail(errc::singular, "Wronskian vanishes at x = " + fmt(x));
  return w;
}

double GeneratorPair::phi(double x) const {
  require_smoothness(2, "phi");
  interval_.require(x, "x");
  const Jet jf = f_.jet(x);
  const Jet jg = g_.jet(x);
  const double w = jf.d1 * jg.v - jg.d1 * jf.v;
  const double scale = std::fabs(jf.d1 * jg.v) + std::fabs(jg.d1 * jf.v);
  if (std::fabs(w) <= kWronskianVanishRel * scale)
    fail(errc::singular, "Wronskian vanishes at x = " + fmt(x));
  return (jf.d2 * jg.v - jg.d2 * jf.v) / w;
}

double GeneratorPair::psi(double x) const {
  require_smoothness(2, "psi");
  interval_.require(x, "x");
  const Jet jf = f_.jet(x);
  const Jet jg = g_.jet(x);
  const double w = jf.d1 * jg.v - jg.d1 * jf.v;
  const double scale = std::fabs(jf.d1 * jg.v) + std::fabs(jg.d1 * jf.v);
  if (std::fabs(w) <= kWronskianVanishRel * scale)
    fail(errc::singular, "Wronskian vanishes at x = " + fmt(x));
  return -(jf.d2 * jg.d1 - jg.d2 * jf.d1) / w;
}

double GeneratorPair::phi_prime(double x) const {
  require_smoothness(3, "phi_prime");
  interval_.require(x, "x");
  const Jet jf = f_.jet(x);
  const Jet jg = g_.jet(x);
  const double w = jf.d1 * jg.v - jg.d1 * jf.v;
  const double scale = std::fabs(jf.d1 * jg.v) + std::fabs(jg.d1 * jf.v);
  if (std::fabs(w) <= kWronskianVanishRel * scale)
    fail(errc::singular, "Wronskian vanishes at x = " + fmt(x));
  // numerator N = f''g - g''f satisfies W' = N, so Phi' = (N'W - N^2)/W^2
  const double num = jf.d2 * jg.v - jg.d2 * jf.v;
  const double num_prime = jf.d3 * jg.v + jf.d2 * jg.d1 - jg.d3 * jf.v - jg.d2 * jf.d1;
  return (num_prime * w - num * num) / (w * w);
}

double GeneratorPair::third_ratio(double x) const {
  require_smoothness(3, "third_ratio");
  interval_.require(x, "x");
  const Jet jf = f_.jet(x);
  const Jet jg = g_.jet(x);
  const double w = jf.d1 * jg.v - jg.d1 * jf.v;
  const double scale = std::fabs(jf.d1 * jg.v) + std::fabs(jg.d1 * jf.v);
  if (std::fabs(w) <= kWronskianVanishRel * scale)
    fail(errc::singular, "Wronskian vanishes at x = " + fmt(x));
  return (jf.d3 * jg.v - jg.d3 * jf.v) / w;
}

ChebyshevReport GeneratorPair::is_chebyshev(std::span<const double> grid) const {
  if (grid.size() < 2) fail(errc::invalid_argument, "Chebyshev check needs a grid of >= 2 points");
  for (size_t k = 0; k < grid.size(); ++k) {
    interval_.require(grid[k], "grid point");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      fail(errc::invalid_argument, "Chebyshev check grid must be strictly increasing");
  }
  std::vector<double> fv(grid.size()), gv(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    fv[k] = f_.value(grid[k]);
    gv[k] = g_.value(grid[k]);
  }
  ChebyshevReport rep;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    for (size_t j = i + 1; j < grid.size(); ++j) {
      const double d = fv[i] * gv[j] - gv[i] * fv[j];
      const double scale = std::fabs(fv[i] * gv[j]) + std::fabs(gv[i] * fv[j]);
      int s = 0;
      if (std::fabs(d) > kDetVanishRel * (1.0 + scale)) s = (d > 0.0) ? 1 : -1;
      if (s == 0 || (rep.sign != 0 && s != rep.sign)) {
        rep.sign = 0;
        rep.x = grid[i];
        rep.y = grid[j];
        rep.value = d;
        return rep;
      }
      rep.sign = s;
    }
  }
  return rep;
}

bool GeneratorPair::normalized_form(std::string* why) const {
  if (!normalized_ && why) *why = normalized_why_;
  return normalized_;
}

GeneratorPair GeneratorPair::transformed(const EquivalenceWitness& w) const {
  const double scale = std::fabs(w.a * w.d) + std::fabs(w.b * w.c);
  if (!(std::fabs(w.det()) > 1e-14 * (1.0 + scale)))
    fail(errc::invalid_argument, "transform witness is singular");
  Expr nf = Expr::affine({{w.a, f_}, {w.b, g_}}, 0.0);
  Expr ng = Expr::affine({{w.c, f_}, {w.d, g_}}, 0.0);
  return GeneratorPair(std::move(nf), std::move(ng), interval_, smoothness_);
}

GeneratorPair GeneratorPair::dilated(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(errc::invalid_argument, "dilation needs lambda > 0");
  Expr nf = Expr::affine_arg(f_, lambda, 0.0);
  Expr ng = Expr::affine_arg(g_, lambda, 0.0);
  return GeneratorPair(std::move(nf), std::move(ng),
                       make_interval(interval_.lo / lambda, interval_.hi / lambda), smoothness_);
}

std::optional<EquivalenceWitness> recover_witness(const GeneratorPair& pairA, const GeneratorPair& pairB,
                                                  double x1, double x2, std::span<const double> grid) {
  if (x1 == x2) fail(errc::invalid_argument, "witness anchors must be distinct");
  const Expr& h = pairB.f();
  const Expr& k = pairB.g();

  // anchor candidates: the requested pair first, then spread pairs off the grid
  std::vector<std::pair<double, double>> anchors{{x1, x2}};
  for (size_t t = 0; t + 1 < grid.size() && anchors.size() < 6; ++t) {
    anchors.emplace_back(grid[t], grid[grid.size() - 1 - t]);
  }

  double a = 0, b = 0, c = 0, d = 0;
  bool solved = false;
  for (const auto& [u, v] : anchors) {
    if (u == v) continue;
    const double h1 = h.value(u), k1 = k.value(u);
    const double h2 = h.value(v), k2 = k.value(v);
    const double det = h1 * k2 - k1 * h2;  // D_{h,k}(u, v)
    const double scale = std::fabs(h1 * k2) + std::fabs(k1 * h2);
    if (!(std::fabs(det) > 1e-12 * (1.0 + scale))) continue;
    const double f1 = pairA.f().value(u), f2 = pairA.f().value(v);
    const double g1 = pairA.g().value(u), g2 = pairA.g().value(v);
    a = (f1 * k2 - k1 * f2) / det;
    b = (h1 * f2 - f1 * h2) / det;
    c = (g1 * k2 - k1 * g2) / det;
    d = (h1 * g2 - g1 * h2) / det;
    solved = true;
    break;
  }
  if (!solved) fail(errc::singular, "no usable anchor pair: D_{h,k}(x1,x2) vanishes on all retries");

  EquivalenceWitness w{a, b, c, d};
  const double wscale = std::fabs(a * d) + std::fabs(b * c);
  if (!(std::fabs(w.det()) > 1e-12 * (1.0 + wscale))) return std::nullopt;

  // grid verification, values and first derivatives
  constexpr double kTol = 1e-8;
  for (double x : grid) {
    const Jet jf = pairA.f().jet(x), jg = pairA.g().jet(x);
    const Jet jh = h.jet(x), jk = k.jet(x);
    const double rf = jf.v - (a * jh.v + b * jk.v);
    const double rg = jg.v - (c * jh.v + d * jk.v);
    const double rdf = jf.d1 - (a * jh.d1 + b * jk.d1);
    const double rdg = jg.d1 - (c * jh.d1 + d * jk.d1);
    if (std::fabs(rf) > kTol * (1.0 + std::fabs(jf.v)) || std::fabs(rg) > kTol * (1.0 + std::fabs(jg.v)) ||
        std::fabs(rdf) > kTol * (1.0 + std::fabs(jf.d1)) || std::fabs(rdg) > kTol * (1.0 + std::fabs(jg.d1)))
      return std::nullopt;
  }
  return w;
}

GeneratorPair make_gini_pair(const GiniParams& params, Interval interval) {
  if (!(interval.lo > 0.0)) fail(errc::invalid_argument, "Gini generators live on subintervals of (0, inf)");
  switch (params.kind) {
    case GiniParams::Kind::real_distinct:
      return GeneratorPair(Expr::power(params.p), Expr::power(params.q), interval, 3);
    case GiniParams::Kind::real_equal:
      return GeneratorPair(Expr::product(Expr::power(params.p), Expr::log()), Expr::power(params.p),
                           interval, 3);
    case GiniParams::Kind::conjugate: {
      Expr arg = Expr::affine({{params.b, Expr::log()}}, 0.0);  // b*log(x)
      Expr f = Expr::product(Expr::power(params.a), Expr::compose(Expr::sin(), arg));
      Expr g = Expr::product(Expr::power(params.a), Expr::compose(Expr::cos(), arg));
      return GeneratorPair(std::move(f), std::move(g), interval, 3);
    }
  }
  fail(errc::invalid_argument, "corrupt Gini parameters");
}

bool conjugate_window_ok(double b, const Interval& I) {
  const double hw = M_PI / (2.0 * std::fabs(b));
  return I.lo >= std::exp(-hw) && I.hi <= std::exp(hw);
}

}  // namespace meanlab
