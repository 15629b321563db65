#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "support.hpp"

using namespace meanlab;
using testsupport::rel_gap;
using testsupport::unit_measures;
using testsupport::wa_family;

TEST_CASE("family evaluation examples") {
  const auto tp = MeanFamily::two_point();
  const std::vector<double> xy{1.0, 3.0};
  CHECK(tp.eval(xy, 0.25) == doctest::Approx(2.5).epsilon(1e-15));  // 0.25*1 + 0.75*3
  CHECK(tp.eval(std::vector<double>{3.0, 1.0}, 0.25) == doctest::Approx(1.5).epsilon(1e-15));

  const auto proj = MeanFamily::projection(3);
  const std::vector<double> x3{2.0, 5.0, 7.0};
  CHECK(proj.eval(x3, 2.0) == 5.0);

  // pinching: constant vectors evaluate to the constant
  for (double c : {0.7, 2.0}) {
    const std::vector<double> flat2{c, c};
    CHECK(tp.eval(flat2, 0.42) == doctest::Approx(c));
    const std::vector<double> flat3{c, c, c};
    CHECK(proj.eval(flat3, 3.0) == doctest::Approx(c));
  }
  CHECK_THROWS_AS(proj.eval(x3, 4.0), Error);   // label out of range
  CHECK_THROWS_AS(tp.eval(x3, 0.5), Error);     // dimension mismatch
}

TEST_CASE("partials of the built-in variants") {
  const auto tp = MeanFamily::two_point();
  const std::vector<double> xy{1.0, 3.0};
  CHECK(tp.partial(1, xy, 0.3) == doctest::Approx(0.3));
  CHECK(tp.partial(2, xy, 0.3) == doctest::Approx(0.7));

  const auto proj = MeanFamily::projection(3);
  const std::vector<double> x3{2.0, 5.0, 7.0};
  CHECK(proj.partial(2, x3, 2.0) == 1.0);
  CHECK(proj.partial(1, x3, 2.0) == 0.0);

  const auto wa = wa_family();
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(wa.partial(1, xy, t) == doctest::Approx(t * t));
    CHECK(wa.partial(2, xy, t) == doctest::Approx(1.0 - t * t));
  }
  CHECK_THROWS_AS(tp.partial(3, xy, 0.5), Error);
  CHECK(tp.second_partial(1, 2, xy, 0.5) == 0.0);
  CHECK(tp.third_partial(1, 2, 2, xy, 0.5) == 0.0);
}

TEST_CASE("centered partials") {
  const auto tp = MeanFamily::two_point();
  const std::vector<double> xy{1.0, 3.0};
  for (double s : {0.3, 0.49}) {
    const auto mu = Measure::two_point(s);
    for (double t : {0.0, 1.0}) {
      CHECK(tp.centered_partial(mu, 1, xy, t) == doctest::Approx(t - s).epsilon(1e-14));
      CHECK(tp.centered_partial(mu, 2, xy, t) == doctest::Approx(-(t - s)).epsilon(1e-14));
    }
  }
  const auto proj = MeanFamily::projection(3);
  const auto cnt = Measure::counting(3);
  const std::vector<double> x3{2.0, 5.0, 7.0};
  for (int i = 1; i <= 3; ++i)
    for (int t = 1; t <= 3; ++t)
      CHECK(proj.centered_partial(cnt, i, x3, t) ==
            doctest::Approx((t == i ? 1.0 : 0.0) - 1.0 / 3.0).epsilon(1e-14));
  // dirac measure: value minus itself
  const auto dirac = Measure::dirac_mix({{0.4, 1.0}});
  CHECK(tp.centered_partial(dirac, 1, xy, 0.4) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("centered partials integrate to zero") {
  const std::vector<MeanFamily> fams{MeanFamily::two_point(), wa_family()};
  for (const auto& fam : fams) {
    for (const auto& mu : unit_measures()) {
      const std::vector<double> x(static_cast<size_t>(fam.dim()), 1.3);
      for (int i = 1; i <= fam.dim(); ++i) {
        const double avg =
            mu.integrate([&](double t) { return fam.centered_partial(mu, i, x, t); });
        CHECK(std::fabs(avg) < 1e-13);
      }
    }
  }
}

TEST_CASE("mean value property and homogeneity on random samples") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  std::uniform_real_distribution<double> ul(0.5, 2.0);
  const auto wa = wa_family();
  const auto tp = MeanFamily::two_point();
  for (int k = 0; k < 200; ++k) {
    const std::vector<double> x{u(rng), u(rng)};
    const double t = ut(rng);
    for (const MeanFamily* fam : {&tp, &wa}) {
      const double m = fam->eval(x, t);
      CHECK(m >= std::min(x[0], x[1]) - 1e-14);
      CHECK(m <= std::max(x[0], x[1]) + 1e-14);
      const double lambda = ul(rng);
      const std::vector<double> lx{lambda * x[0], lambda * x[1]};
      CHECK(rel_gap(fam->eval(lx, t), lambda * m) < 1e-13);
    }
  }
}

TEST_CASE("homogeneous families have diagonal-constant centered partials") {
  const auto wa = wa_family();
  const auto mu = Measure::uniform_quadrature(16);
  const auto grid = chebyshev_grid(make_interval(0.5, 3.0), 33);
  for (int i = 1; i <= 2; ++i) {
    for (double t : {0.1, 0.6, 0.9}) {
      std::vector<double> vals;
      for (double x : grid) {
        const std::vector<double> xd{x, x};
        vals.push_back(wa.centered_partial(mu, i, xd, t));
      }
      for (double v : vals) CHECK(std::fabs(v - vals.front()) < 1e-12);
    }
  }
}

TEST_CASE("nondegeneracy reports") {
  const auto tp = MeanFamily::two_point();

  // asymmetric two-point measure: mt0 at (1,1,1) equals the third moment
  for (double s : {0.3, 0.7}) {
    const auto nd = tp.nondegeneracy(Measure::two_point(s), 1.0);
    CHECK(nd.satisfied);
    CHECK(nd.mt1_mass == doctest::Approx(0.0).scale(1.0));
    CHECK(std::fabs(nd.mt0_value) ==
          doctest::Approx(std::fabs(s * (1 - s) * (1 - 2 * s))).epsilon(1e-12));
  }

  // symmetric measure: all triples vanish (mu_3 = 0), MT0 fails
  const auto nd_sym = tp.nondegeneracy(Measure::two_point(0.5), 1.0);
  CHECK_FALSE(nd_sym.satisfied);
  CHECK(nd_sym.mt1_ok);
  CHECK_FALSE(nd_sym.mt0_ok);

  // single dirac: every centered partial vanishes identically
  const auto nd_dirac = tp.nondegeneracy(Measure::dirac_mix({{0.4, 1.0}}), 1.0);
  CHECK_FALSE(nd_dirac.satisfied);
  CHECK(nd_dirac.mt1_mass == doctest::Approx(1.0));

  // brute force over the 8 sign combinations for the symmetric case
  const auto mu_half = Measure::two_point(0.5);
  const std::vector<double> xd{1.0, 1.0};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int l = 1; l <= 2; ++l) {
        const double v = mu_half.integrate([&](double t) {
          return tp.centered_partial(mu_half, i, xd, t) * tp.centered_partial(mu_half, j, xd, t) *
                 tp.centered_partial(mu_half, l, xd, t);
        });
        CHECK(std::fabs(v) < 1e-15);
      }
}

TEST_CASE("measure compatibility is enforced") {
  const auto proj = MeanFamily::projection(3);
  CHECK_THROWS_AS(proj.nondegeneracy(Measure::two_point(0.3), 1.0), Error);
  CHECK_THROWS_AS(proj.nondegeneracy(Measure::counting(2), 1.0), Error);
  const auto tp = MeanFamily::two_point();
  CHECK_THROWS_AS(tp.nondegeneracy(Measure::counting(2), 1.0), Error);

  // weighted-arithmetic coefficient sum must be 1 at every node
  const auto bad = MeanFamily::weighted_arithmetic({Expr::power(2.0), Expr::constant(0.5)});
  CHECK_THROWS_AS(bad.validate_measure(Measure::two_point(0.3)), Error);

  // table-based coefficients over labels
  const auto table = MeanFamily::weighted_arithmetic_table({{0.2, 0.5}, {0.8, 0.5}});
  table.validate_measure(Measure::counting(2));
  const std::vector<double> xy{1.0, 2.0};
  CHECK(table.eval(xy, 1.0) == doctest::Approx(0.2 * 1.0 + 0.8 * 2.0));
}

TEST_CASE("third-order moment identity for centered products") {
  // <didjdl> - sum_cyc <da><db dg> + 2<di><dj><dl> = <di* dj* dl*>
  const auto wa = wa_family();
  for (const auto& mu : unit_measures()) {
    const std::vector<double> xd{1.4, 1.4};
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (int l = 1; l <= 2; ++l) {
          auto p = [&](int r, double t) { return wa.partial(r, xd, t); };
          const double pij = mu.integrate([&](double t) { return p(i, t) * p(j, t) * p(l, t); });
          const double ai = mu.integrate([&](double t) { return p(i, t); });
          const double aj = mu.integrate([&](double t) { return p(j, t); });
          const double al = mu.integrate([&](double t) { return p(l, t); });
          const double mjl = mu.integrate([&](double t) { return p(j, t) * p(l, t); });
          const double mli = mu.integrate([&](double t) { return p(l, t) * p(i, t); });
          const double mij = mu.integrate([&](double t) { return p(i, t) * p(j, t); });
          const double lhs = pij - (ai * mjl + aj * mli + al * mij) + 2.0 * ai * aj * al;
          const double rhs = mu.integrate([&](double t) {
            return wa.centered_partial(mu, i, xd, t) * wa.centered_partial(mu, j, xd, t) *
                   wa.centered_partial(mu, l, xd, t);
          });
          CHECK(std::fabs(lhs - rhs) < 1e-12);
        }
  }
}
