#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "expr.hpp"

using namespace meanlab;

TEST_CASE("power jets match hand derivatives") {
  const Expr p = Expr::power(2.5);
  const Jet j = p.jet(1.7);
  CHECK(j.v == doctest::Approx(std::pow(1.7, 2.5)).epsilon(1e-15));
  CHECK(j.d1 == doctest::Approx(2.5 * std::pow(1.7, 1.5)).epsilon(1e-15));
  CHECK(j.d2 == doctest::Approx(2.5 * 1.5 * std::pow(1.7, 0.5)).epsilon(1e-15));
  CHECK(j.d3 == doctest::Approx(2.5 * 1.5 * 0.5 * std::pow(1.7, -0.5)).epsilon(1e-15));
}

TEST_CASE("product rule to order three") {
  // x^2 * log(x): d3 = dddx (2x log x + x) = 2 log x + 3 -> d3 = 2/x
  const Expr e = Expr::product(Expr::power(2.0), Expr::log());
  const double x = 1.3;
  const Jet j = e.jet(x);
  CHECK(j.v == doctest::Approx(x * x * std::log(x)).epsilon(1e-15));
  CHECK(j.d1 == doctest::Approx(2 * x * std::log(x) + x).epsilon(1e-15));
  CHECK(j.d2 == doctest::Approx(2 * std::log(x) + 3).epsilon(1e-15));
  CHECK(j.d3 == doctest::Approx(2 / x).epsilon(1e-15));
}

TEST_CASE("composition chain rule: sin(b log x)") {
  const double b = 2.0;
  const Expr arg = Expr::affine({{b, Expr::log()}}, 0.0);
  const Expr e = Expr::compose(Expr::sin(), arg);
  const double x = 0.95;
  const Jet j = e.jet(x);
  const double u = b * std::log(x);
  CHECK(j.v == doctest::Approx(std::sin(u)).epsilon(1e-15));
  CHECK(j.d1 == doctest::Approx(std::cos(u) * b / x).epsilon(1e-14));
  // d2 sin(b log x) = (-b^2 sin(u) - b cos(u)) / x^2
  CHECK(j.d2 == doctest::Approx((-b * b * std::sin(u) - b * std::cos(u)) / (x * x)).epsilon(1e-14));
  // d3 sin(b log x) = (b(2 - b^2) cos(u) + 3 b^2 sin(u)) / x^3
  CHECK(j.d3 ==
        doctest::Approx((b * (2.0 - b * b) * std::cos(u) + 3.0 * b * b * std::sin(u)) / (x * x * x))
            .epsilon(1e-14));
}

TEST_CASE("affine argument rescales derivatives by powers of the scale") {
  const Expr e = Expr::affine_arg(Expr::exp(), 2.0, -0.5);
  const double x = 0.8;
  const double inner = 2.0 * x - 0.5;
  const Jet j = e.jet(x);
  CHECK(j.v == doctest::Approx(std::exp(inner)).epsilon(1e-15));
  CHECK(j.d1 == doctest::Approx(2.0 * std::exp(inner)).epsilon(1e-15));
  CHECK(j.d2 == doctest::Approx(4.0 * std::exp(inner)).epsilon(1e-15));
  CHECK(j.d3 == doctest::Approx(8.0 * std::exp(inner)).epsilon(1e-15));
}

TEST_CASE("domain errors carry the offending point") {
  CHECK_THROWS_AS(Expr::log().value(-1.0), Error);
  CHECK_THROWS_AS(Expr::power(0.5).value(-2.0), Error);
  CHECK_THROWS_AS(Expr::power(-1.0).value(0.0), Error);
  CHECK(Expr::power(2.0).value(-2.0) == doctest::Approx(4.0));  // integral exponents stay defined
}

TEST_CASE("json round trip preserves evaluation") {
  const Expr e = Expr::affine({{2.0, Expr::power(1.5)}, {-1.0, Expr::log()}}, 3.0);
  const Expr back = Expr::from_json(nlohmann::json::parse(e.to_json().dump()));
  for (double x : {0.5, 1.0, 2.3}) {
    const Jet a = e.jet(x);
    const Jet b = back.jet(x);
    CHECK(a.v == b.v);
    CHECK(a.d3 == b.d3);
  }
}

TEST_CASE("parser accepts shorthand forms and rejects junk") {
  CHECK(Expr::from_json("x").value(4.0) == 4.0);
  CHECK(Expr::from_json(nlohmann::json::parse("{\"pow\": 2.0}")).value(3.0) == 9.0);
  CHECK(Expr::from_json(nlohmann::json::parse("0.25")).value(9.0) == 0.25);
  CHECK_THROWS_AS(Expr::from_json(nlohmann::json::parse("{\"cosh\": 1}")), Error);
  CHECK_THROWS_AS(Expr::from_json(nlohmann::json::parse("[1, 2]")), Error);
}
