#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "meanlab/meanlab.h"

TEST_CASE("expression handles evaluate catalog functions") {
  ml_expr* e = nullptr;
  REQUIRE(ml_expr_parse("{\"pow\": 2.0}", &e) == ML_OK);
  double v = 0.0;
  CHECK(ml_expr_eval(e, 3.0, 0, &v) == ML_OK);
  CHECK(v == doctest::Approx(9.0));
  CHECK(ml_expr_eval(e, 3.0, 1, &v) == ML_OK);
  CHECK(v == doctest::Approx(6.0));
  CHECK(ml_expr_eval(e, 3.0, 4, &v) == ML_ECAPABILITY);
  ml_expr_free(e);

  ml_expr* bad = nullptr;
  CHECK(ml_expr_parse("{\"sinh\": 2.0}", &bad) == ML_EPARSE);
  CHECK(std::strlen(ml_last_error()) > 0);
}

TEST_CASE("pair handles expose the determinant calculus") {
  ml_pair* p = nullptr;
  REQUIRE(ml_pair_parse(
              "{\"f\": {\"pow\": 2.0}, \"g\": {\"pow\": 1.0}, \"interval\": [0.5, 4.0]}", &p) == ML_OK);
  double v = 0.0;
  CHECK(ml_pair_det(p, 1.0, 2.0, &v) == ML_OK);
  CHECK(v == doctest::Approx(1.0 * 2.0 - 1.0 * 4.0));  // f(1)g(2) - g(1)f(2) = 2 - 4
  CHECK(ml_pair_wronskian(p, 3.0, &v) == ML_OK);
  CHECK(v == doctest::Approx(9.0));
  CHECK(ml_pair_phi(p, 2.0, &v) == ML_OK);
  CHECK(v == doctest::Approx(1.0));  // (p+q-1)/x = 2/2
  CHECK(ml_pair_psi(p, 2.0, &v) == ML_OK);
  CHECK(v == doctest::Approx(-0.5));  // -pq/x^2
  CHECK(ml_pair_det(p, 9.0, 2.0, &v) == ML_EDOMAIN);

  int sign = 7;
  CHECK(ml_pair_chebyshev_check(p, nullptr, 0, &sign, nullptr, nullptr) == ML_OK);
  CHECK(sign != 0);

  ml_pair* moved = nullptr;
  REQUIRE(ml_pair_transform(p, 1.0, 0.5, 0.3, 1.0, &moved) == ML_OK);
  int found = 0;
  double w[4] = {0, 0, 0, 0};
  CHECK(ml_pair_recover_witness(moved, p, 1.0, 3.0, nullptr, 0, &found, w) == ML_OK);
  CHECK(found == 1);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-10));
  ml_pair_free(moved);

  ml_pair* shrunk = nullptr;
  REQUIRE(ml_pair_dilate(p, 2.0, &shrunk) == ML_OK);
  CHECK(ml_pair_phi(shrunk, 1.0, &v) == ML_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));  // lambda * phi(lambda * x) = 2 * (2/2)
  ml_pair_free(shrunk);
  ml_pair_free(p);
}

TEST_CASE("measure and family handles") {
  ml_measure* mu = nullptr;
  REQUIRE(ml_measure_two_point(0.3, &mu) == ML_OK);
  double v = 0.0;
  CHECK(ml_measure_first_moment(mu, &v) == ML_OK);
  CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(ml_measure_central_moment(mu, 3, &v) == ML_OK);
  CHECK(v == doctest::Approx(0.3 * 0.7 * 0.4).epsilon(1e-13));
  CHECK(ml_measure_size(mu) == 2);
  double t = 0, wgt = 0;
  CHECK(ml_measure_node(mu, 1, &t, &wgt) == ML_OK);
  CHECK(t == 1.0);
  CHECK(wgt == doctest::Approx(0.3));

  auto square = [](double x, void*) { return x * x; };
  CHECK(ml_measure_integrate(mu, square, nullptr, &v) == ML_OK);
  CHECK(v == doctest::Approx(0.3).epsilon(1e-15));

  ml_family* fam = nullptr;
  REQUIRE(ml_family_two_point(&fam) == ML_OK);
  CHECK(ml_family_dim(fam) == 2);
  const double xy[2] = {1.0, 3.0};
  CHECK(ml_family_eval(fam, xy, 2, 0.25, &v) == ML_OK);
  CHECK(v == doctest::Approx(2.5));  // 0.25*1 + 0.75*3
  CHECK(ml_family_partial(fam, 1, xy, 2, 0.25, &v) == ML_OK);
  CHECK(v == doctest::Approx(0.25));
  CHECK(ml_family_centered_partial(fam, mu, 1, xy, 2, 1.0, &v) == ML_OK);
  CHECK(v == doctest::Approx(0.7).epsilon(1e-14));

  double mass = -1, mt0 = 0;
  int triple[3] = {0, 0, 0};
  int sat = 0;
  CHECK(ml_family_nondegeneracy(fam, mu, 1.0, &mass, triple, &mt0, &sat) == ML_OK);
  CHECK(sat == 1);
  CHECK(mass == 0.0);

  ml_family_free(fam);
  ml_measure_free(mu);
}

TEST_CASE("evaluation routes through the C surface") {
  ml_pair* p = nullptr;
  REQUIRE(ml_pair_gini(2.0, 1.0, 0, 0.5, 8.0, &p) == ML_OK);
  ml_family* fam = nullptr;
  REQUIRE(ml_family_projection(2, &fam) == ML_OK);
  ml_measure* mu = nullptr;
  REQUIRE(ml_measure_counting(2, &mu) == ML_OK);

  const double x[2] = {4.0, 2.0};
  double a = 0, b = 0, c = 0;
  CHECK(ml_eval_implicit(p, fam, mu, x, 2, &a) == ML_OK);
  CHECK(ml_eval_explicit(p, fam, mu, x, 2, &b) == ML_OK);
  CHECK(ml_eval_gini(2.0, 1.0, 0, fam, mu, x, 2, &c) == ML_OK);
  CHECK(a == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
  CHECK(b == doctest::Approx(a).epsilon(1e-12));
  CHECK(c == doctest::Approx(a).epsilon(1e-12));

  double h = 0;
  CHECK(ml_eval_holder(2.0, fam, mu, x, 2, &h) == ML_OK);
  CHECK(h == doctest::Approx(std::sqrt(10.0)).epsilon(1e-13));

  double g = 0;
  CHECK(ml_eval_gini_discrete(2.0, 1.0, 0, x, nullptr, 2, &g) == ML_OK);
  CHECK(g == doctest::Approx(10.0 / 3.0).epsilon(1e-14));

  double d1 = 0;
  CHECK(ml_diag_d1(p, fam, mu, 1.5, 1, &d1) == ML_OK);
  CHECK(d1 == doctest::Approx(0.5).epsilon(1e-14));
  const int idx[1] = {1};
  double fd = 0;
  CHECK(ml_fd_diag(p, fam, mu, 1.5, 1, idx, 0.0, &fd) == ML_OK);
  CHECK(fd == doctest::Approx(d1).epsilon(1e-7));

  ml_measure_free(mu);
  ml_family_free(fam);
  ml_pair_free(p);
}

TEST_CASE("deciders return verdict reports") {
  ml_pair* p = nullptr;
  REQUIRE(ml_pair_gini(2.0, 1.0, 0, 1.0, 2.0, &p) == ML_OK);
  ml_family* fam = nullptr;
  REQUIRE(ml_family_two_point(&fam) == ML_OK);
  ml_measure* mu = nullptr;
  REQUIRE(ml_measure_two_point(0.3, &mu) == ML_OK);

  ml_report* rep = nullptr;
  REQUIRE(ml_classify_homogeneous(p, fam, mu, nullptr, 0, 0, &rep) == ML_OK);
  CHECK(std::string(ml_report_verdict(rep)) == "homogeneous");
  CHECK(ml_report_exit_status(rep) == 0);
  char* json = nullptr;
  REQUIRE(ml_report_json(rep, &json) == ML_OK);
  CHECK(std::string(json).find("\"gini\"") != std::string::npos);
  ml_string_free(json);
  ml_report_free(rep);

  ml_pair* moved = nullptr;
  REQUIRE(ml_pair_transform(p, 2.0, 0.0, 0.0, 1.0, &moved) == ML_OK);
  ml_report* eq = nullptr;
  REQUIRE(ml_decide_equality(p, moved, fam, mu, nullptr, 0, 0, &eq) == ML_OK);
  CHECK(std::string(ml_report_verdict(eq)) == "equal");
  ml_report_free(eq);
  ml_pair_free(moved);

  double lo = 0, hi = 0;
  CHECK(ml_ratio_set(1.0, 2.0, &lo, &hi) == ML_OK);
  CHECK(lo == doctest::Approx(0.5));
  CHECK(hi == doctest::Approx(2.0));
  CHECK(ml_lambda_section(1.0, 2.0, 3.0, &lo, &hi) == ML_EDOMAIN);

  ml_report* scan = nullptr;
  REQUIRE(ml_homogeneity_scan(p, fam, mu, 5, 2, 0, &scan) == ML_OK);
  CHECK(std::string(ml_report_verdict(scan)) == "report");
  ml_report_free(scan);

  ml_measure_free(mu);
  ml_family_free(fam);
  ml_pair_free(p);
}

TEST_CASE("job runner through the C surface") {
  const char* job = R"({
    "command": "eval",
    "gini": {"p": 2.0, "q": 1.0, "interval": [0.5, 8.0]},
    "family": {"projection": {"d": 2}},
    "measure": {"counting": {"d": 2}},
    "points": [[4.0, 2.0]]
  })";
  char* json = nullptr;
  char* text = nullptr;
  int status = -1;
  REQUIRE(ml_run_job(job, nullptr, &json, &text, &status) == ML_OK);
  CHECK(status == 0);
  CHECK(std::string(json).find("3.3333333333333335") != std::string::npos);
  CHECK(std::string(text).find("meanlab eval") == 0);
  ml_string_free(json);
  ml_string_free(text);

  CHECK(ml_run_job("{\"command\": ", nullptr, nullptr, nullptr, nullptr) == ML_EPARSE);
  CHECK(std::string(ml_last_error()).find("malformed") != std::string::npos);
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(ml_expr_parse(nullptr, nullptr) == ML_EINVAL);
  CHECK(ml_pair_det(nullptr, 1.0, 2.0, nullptr) == ML_EINVAL);
  CHECK(ml_run_job(nullptr, nullptr, nullptr, nullptr, nullptr) == ML_EINVAL);
  CHECK(std::string(ml_status_name(ML_EDOMAIN)) == "domain");
  CHECK(std::string(ml_version()).size() > 0);
}
