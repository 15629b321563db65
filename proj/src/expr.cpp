#include "expr.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace meanlab {

namespace {

enum class Kind { kConst, kIdentity, kPow, kLog, kExp, kSin, kCos, kAffine, kProduct, kCompose, kAffineArg };

bool integral_exponent(double r) { return r == std::floor(r) && std::fabs(r) <= 64.0; }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

struct Expr::Node {
  Kind kind;
  double a = 0.0;  // const value / exponent / affine_arg scale
  double b = 0.0;  // affine offset / affine_arg shift
  std::vector<std::pair<double, Expr>> terms;  // affine
  Expr lhs, rhs;                               // product / compose(outer,inner) / affine_arg(inner in lhs)
};

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConst;
  n->a = c;
  return Expr(std::move(n));
}

Expr Expr::identity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kIdentity;
  return Expr(std::move(n));
}

Expr Expr::power(double r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPow;
  n->a = r;
  return Expr(std::move(n));
}

Expr Expr::log() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLog;
  return Expr(std::move(n));
}

Expr Expr::exp() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kExp;
  return Expr(std::move(n));
}

Expr Expr::sin() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kSin;
  return Expr(std::move(n));
}

Expr Expr::cos() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCos;
  return Expr(std::move(n));
}

Expr Expr::affine(std::vector<std::pair<double, Expr>> terms, double offset) {
  for (const auto& [c, e] : terms) {
    if (!std::isfinite(c)) fail(errc::invalid_argument, "affine coefficient must be finite");
    if (!e.valid()) fail(errc::invalid_argument, "affine term expression missing");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAffine;
  n->b = offset;
  n->terms = std::move(terms);
  return Expr(std::move(n));
}

Expr Expr::product(Expr a, Expr b) {
  if (!a.valid() || !b.valid()) fail(errc::invalid_argument, "product operand missing");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kProduct;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::compose(Expr outer, Expr inner) {
  if (!outer.valid() || !inner.valid()) fail(errc::invalid_argument, "compose operand missing");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCompose;
  n->lhs = std::move(outer);
  n->rhs = std::move(inner);
  return Expr(std::move(n));
}

Expr Expr::affine_arg(Expr inner, double scale, double shift) {
  if (!inner.valid()) fail(errc::invalid_argument, "affine_arg inner expression missing");
  if (!std::isfinite(scale) || !std::isfinite(shift) || scale == 0.0)
    fail(errc::invalid_argument, "affine_arg needs finite scale != 0 and finite shift");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAffineArg;
  n->lhs = std::move(inner);
  n->a = scale;
  n->b = shift;
  return Expr(std::move(n));
}

namespace {

double pow_value(double x, double r) {
  if (r == 0.0) return 1.0;
  if (x <= 0.0 && !integral_exponent(r))
    fail(errc::domain, "x^" + fmt(r) + " requires x > 0 (got x = " + fmt(x) + ")");
  if (x == 0.0 && r < 0.0) fail(errc::domain, "x^" + fmt(r) + " undefined at x = 0");
  return std::pow(x, r);
}

Jet pow_jet(double x, double r) {
  Jet j;
  j.v = pow_value(x, r);
  const double c1 = r;
  const double c2 = r * (r - 1.0);
  const double c3 = r * (r - 1.0) * (r - 2.0);
  j.d1 = (c1 == 0.0) ? 0.0 : c1 * pow_value(x, r - 1.0);
  j.d2 = (c2 == 0.0) ? 0.0 : c2 * pow_value(x, r - 2.0);
  j.d3 = (c3 == 0.0) ? 0.0 : c3 * pow_value(x, r - 3.0);
  return j;
}

double log_value(double x) {
  if (x <= 0.0) fail(errc::domain, "log requires x > 0 (got x = " + fmt(x) + ")");
  return std::log(x);
}

Jet log_jet(double x) {
  const double v = log_value(x);
  const double ix = 1.0 / x;
  return {v, ix, -ix * ix, 2.0 * ix * ix * ix};
}

}  // namespace

double Expr::value(double x) const {
  if (!node_) fail(errc::invalid_argument, "empty expression");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst: return n.a;
    case Kind::kIdentity: return x;
    case Kind::kPow: return pow_value(x, n.a);
    case Kind::kLog: return log_value(x);
    case Kind::kExp: return std::exp(x);
    case Kind::kSin: return std::sin(x);
    case Kind::kCos: return std::cos(x);
    case Kind::kAffine: {
      double s = n.b;
      for (const auto& [c, e] : n.terms) s += c * e.value(x);
      return s;
    }
    case Kind::kProduct: return n.lhs.value(x) * n.rhs.value(x);
    case Kind::kCompose: return n.lhs.value(n.rhs.value(x));
    case Kind::kAffineArg: return n.lhs.value(n.a * x + n.b);
  }
  fail(errc::invalid_argument, "corrupt expression node");
}

Jet Expr::jet(double x) const {
  if (!node_) fail(errc::invalid_argument, "empty expression");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst: return {n.a, 0.0, 0.0, 0.0};
    case Kind::kIdentity: return {x, 1.0, 0.0, 0.0};
    case Kind::kPow: return pow_jet(x, n.a);
    case Kind::kLog: return log_jet(x);
    case Kind::kExp: {
      const double v = std::exp(x);
      return {v, v, v, v};
    }
    case Kind::kSin: {
      const double s = std::sin(x), c = std::cos(x);
      return {s, c, -s, -c};
    }
    case Kind::kCos: {
      const double s = std::sin(x), c = std::cos(x);
      return {c, -s, -c, s};
    }
    case Kind::kAffine: {
      Jet r{n.b, 0.0, 0.0, 0.0};
      for (const auto& [c, e] : n.terms) r = r + c * e.jet(x);
      return r;
    }
    case Kind::kProduct: return jet_mul(n.lhs.jet(x), n.rhs.jet(x));
    case Kind::kCompose: {
      const Jet u = n.rhs.jet(x);
      return jet_chain(n.lhs.jet(u.v), u);
    }
    case Kind::kAffineArg: {
      const Jet u{n.a * x + n.b, n.a, 0.0, 0.0};
      return jet_chain(n.lhs.jet(u.v), u);
    }
  }
  fail(errc::invalid_argument, "corrupt expression node");
}

double Expr::deriv(double x, int order) const {
  if (order < 0 || order > 3) fail(errc::capability, "derivatives available to order 3 only");
  const Jet j = jet(x);
  switch (order) {
    case 0: return j.v;
    case 1: return j.d1;
    case 2: return j.d2;
    default: return j.d3;
  }
}

nlohmann::ordered_json Expr::to_json() const {
  using nlohmann::ordered_json;
  if (!node_) fail(errc::invalid_argument, "empty expression");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst: return ordered_json{{"const", n.a}};
    case Kind::kIdentity: return ordered_json{{"identity", ordered_json::object()}};
    case Kind::kPow: return ordered_json{{"pow", n.a}};
    case Kind::kLog: return ordered_json{{"log", ordered_json::object()}};
    case Kind::kExp: return ordered_json{{"exp", ordered_json::object()}};
    case Kind::kSin: return ordered_json{{"sin", ordered_json::object()}};
    case Kind::kCos: return ordered_json{{"cos", ordered_json::object()}};
    case Kind::kAffine: {
      ordered_json terms = ordered_json::array();
      for (const auto& [c, e] : n.terms) terms.push_back(ordered_json::array({c, e.to_json()}));
      return ordered_json{{"affine", ordered_json{{"terms", terms}, {"offset", n.b}}}};
    }
    case Kind::kProduct:
      return ordered_json{{"product", ordered_json::array({n.lhs.to_json(), n.rhs.to_json()})}};
    case Kind::kCompose:
      return ordered_json{{"compose", ordered_json{{"outer", n.lhs.to_json()}, {"inner", n.rhs.to_json()}}}};
    case Kind::kAffineArg:
      return ordered_json{
          {"affine_arg", ordered_json{{"inner", n.lhs.to_json()}, {"scale", n.a}, {"shift", n.b}}}};
  }
  fail(errc::invalid_argument, "corrupt expression node");
}

Expr Expr::from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "identity" || s == "x") return identity();
    if (s == "log") return log();
    if (s == "exp") return exp();
    if (s == "sin") return sin();
    if (s == "cos") return cos();
    fail(errc::parse, "unknown expression name '" + s + "'");
  }
  if (j.is_number()) return constant(j.get<double>());
  if (!j.is_object() || j.size() != 1)
    fail(errc::parse, "expression must be a name, a number, or a single-key object");
  const auto it = j.begin();
  const std::string key = it.key();
  const nlohmann::json& v = it.value();
  if (key == "const") return constant(v.get<double>());
  if (key == "identity") return identity();
  if (key == "pow") return power(v.get<double>());
  if (key == "log") return log();
  if (key == "exp") return exp();
  if (key == "sin") return sin();
  if (key == "cos") return cos();
  if (key == "affine") {
    if (!v.contains("terms")) fail(errc::parse, "affine expression needs a 'terms' array");
    std::vector<std::pair<double, Expr>> terms;
    for (const auto& t : v.at("terms")) {
      if (!t.is_array() || t.size() != 2) fail(errc::parse, "affine term must be [coefficient, expr]");
      terms.emplace_back(t.at(0).get<double>(), from_json(t.at(1)));
    }
    const double offset = v.value("offset", 0.0);
    return affine(std::move(terms), offset);
  }
  if (key == "product") {
    if (!v.is_array() || v.size() != 2) fail(errc::parse, "product expects [lhs, rhs]");
    return product(from_json(v.at(0)), from_json(v.at(1)));
  }
  if (key == "compose") {
    return compose(from_json(v.at("outer")), from_json(v.at("inner")));
  }
  if (key == "affine_arg") {
    return affine_arg(from_json(v.at("inner")), v.at("scale").get<double>(), v.value("shift", 0.0));
  }
  fail(errc::parse, "unknown expression node '" + key + "'");
}

std::string Expr::describe() const {
  if (!node_) return "<empty>";
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::kConst: return fmt(n.a);
    case Kind::kIdentity: return "x";
    case Kind::kPow: return "x^" + fmt(n.a);
    case Kind::kLog: return "log(x)";
    case Kind::kExp: return "exp(x)";
    case Kind::kSin: return "sin(x)";
    case Kind::kCos: return "cos(x)";
    case Kind::kAffine: {
      std::string s;
      for (const auto& [c, e] : n.terms) {
        if (!s.empty()) s += " + ";
        s += fmt(c) + "*(" + e.describe() + ")";
      }
      if (n.b != 0.0 || s.empty()) s += (s.empty() ? "" : " + ") + fmt(n.b);
      return s;
    }
    case Kind::kProduct: return "(" + n.lhs.describe() + ")*(" + n.rhs.describe() + ")";
    case Kind::kCompose: {
      // print the common outer primitives directly
      const std::string inner = n.rhs.describe();
      switch (n.lhs.node_->kind) {
        case Kind::kLog: return "log(" + inner + ")";
        case Kind::kExp: return "exp(" + inner + ")";
        case Kind::kSin: return "sin(" + inner + ")";
        case Kind::kCos: return "cos(" + inner + ")";
        case Kind::kPow: return "(" + inner + ")^" + fmt(n.lhs.node_->a);
        default: return "(" + n.lhs.describe() + ")o(" + inner + ")";
      }
    }
    case Kind::kAffineArg:
      return "(" + n.lhs.describe() + ")(" + fmt(n.a) + "*x" + (n.b == 0.0 ? "" : " + " + fmt(n.b)) + ")";
  }
  return "<corrupt>";
}

}  // namespace meanlab
