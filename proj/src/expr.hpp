#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jet.hpp"

namespace meanlab {

// Closed catalog of scalar functions with exact derivatives to order three.
// Nodes: constant, identity, power x^r, log, exp, sin, cos, affine
// combination, product, general composition, and composition with an affine
// argument. Immutable; cheap to copy (shared tree).
class Expr {
 public:
  Expr() = default;

  static Expr constant(double c);
  static Expr identity();
  static Expr power(double r);
  static Expr log();
  static Expr exp();
  static Expr sin();
  static Expr cos();
  static Expr affine(std::vector<std::pair<double, Expr>> terms, double offset);
  static Expr product(Expr a, Expr b);
  static Expr compose(Expr outer, Expr inner);
  static Expr affine_arg(Expr inner, double scale, double shift);

  bool valid() const { return node_ != nullptr; }

  // Value only; throws errc::domain when x is outside a node's domain.
  double value(double x) const;
  // Value and derivatives to order three.
  Jet jet(double x) const;
  double deriv(double x, int order) const;

  nlohmann::ordered_json to_json() const;
  static Expr from_json(const nlohmann::json& j);

  // Compact human-readable form, e.g. "x^2", "x^1*sin(2*log(x))".
  std::string describe() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace meanlab
