#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "jobs.hpp"

using namespace meanlab;

namespace {

const char* kEvalJob = R"({
  "command": "eval",
  "gini": {"p": 2.0, "q": 1.0, "interval": [0.5, 8.0]},
  "family": {"projection": {"d": 2}},
  "measure": {"counting": {"d": 2}},
  "points": [[4.0, 2.0]]
})";

}  // namespace

TEST_CASE("eval job reports both routes and the closed form") {
  const JobResult r = run_job(kEvalJob);
  CHECK(r.exit_status == 0);
  const auto& row = r.report.at("results").at("values").at(0);
  CHECK(row.at("implicit").get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
  CHECK(row.at("explicit").get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
  CHECK(row.at("closed").get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
  CHECK(row.at("route_discrepancy").get<double>() <= 1e-12);
  CHECK(r.text.find("meanlab eval") == 0);
}

TEST_CASE("equality job certifies a transform with a witness") {
  const char* job = R"({
    "command": "equality-check",
    "pair_a": {"f": {"pow": 1.0}, "g": {"const": 1.0}, "interval": [1.0, 2.0]},
    "pair_b": {
      "f": {"affine": {"terms": [[2.0, "identity"]], "offset": 3.0}},
      "g": {"affine": {"terms": [[1.0, "identity"]], "offset": -1.0}},
      "interval": [1.0, 2.0]
    },
    "family": {"two_point": {}},
    "measure": {"dirac_mix": [[0.0, 0.7], [1.0, 0.3]]}
  })";
  const JobResult r = run_job(job);
  CHECK(r.exit_status == 0);
  CHECK(r.report.at("results").at("verdict") == "equal");
  const auto& w = r.report.at("results").at("witness");
  CHECK(w.at(0).get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(w.at(1).get<double>() == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("symmetric measure drives the classifier to exit status 2") {
  const char* job = R"({
    "command": "homogeneity-classify",
    "pair": {"f": {"pow": 2.0}, "g": {"pow": 1.0}, "interval": [1.0, 2.0]},
    "family": {"two_point": {}},
    "measure": {"two_point": {"s": 0.5}}
  })";
  const JobResult r = run_job(job);
  CHECK(r.exit_status == 2);
  CHECK(r.report.at("results").at("verdict") == "indeterminate");
}

TEST_CASE("moments job") {
  const char* job = R"({
    "command": "moments",
    "measure": {"dirac_mix": [[0.0, 0.7], [1.0, 0.3]]},
    "max_order": 3
  })";
  const JobResult r = run_job(job);
  CHECK(r.exit_status == 0);
  CHECK(r.report.at("results").at("first_moment").get<double>() == doctest::Approx(0.3).epsilon(1e-15));
  const auto& central = r.report.at("results").at("central_moments");
  CHECK(central.at(1).at("value").get<double>() == doctest::Approx(0.21).epsilon(1e-14));
  CHECK(central.at(2).at("value").get<double>() == doctest::Approx(0.21 * 0.4).epsilon(1e-13));
}

TEST_CASE("derivative-check job emits a finite table") {
  const char* job = R"({
    "command": "derivative-check",
    "pair": {"gini": {"p": 2.0, "q": 1.0}, "interval": [0.5, 3.0]},
    "family": {"two_point": {}},
    "measure": {"two_point": {"s": 0.3}},
    "points": [1.3],
    "max_order": 2
  })";
  const JobResult r = run_job(job);
  CHECK(r.exit_status == 0);
  for (const auto& row : r.report.at("results").at("table")) {
    CHECK(std::isfinite(row.at("closed").get<double>()));
    const int order = row.at("order").get<int>();
    const double rel = row.at("relative_error").get<double>();
    CHECK(rel < (order == 1 ? 1e-7 : 1e-5));
  }
}

TEST_CASE("overrides merge and conflicts are rejected") {
  const JobResult r = run_job(kEvalJob, R"({"command": "eval", "seed": 11, "grid": 21})");
  CHECK(r.exit_status == 0);
  CHECK(r.report.at("job").at("seed").get<int>() == 11);
  CHECK(r.report.at("job").at("grid").get<int>() == 21);
  CHECK_THROWS_AS(run_job(kEvalJob, R"({"command": "moments"})"), Error);
}

TEST_CASE("malformed jobs carry a diagnostic") {
  CHECK_THROWS_AS(run_job("{\"command\": "), Error);
  try {
    run_job("{\"command\": ");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse);
    CHECK(std::string(e.what()).find("malformed") != std::string::npos);
  }
  // missing fields name the field
  try {
    run_job(R"({"command": "eval"})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("measure") != std::string::npos);
  }
  CHECK_THROWS_AS(run_job(R"({"command": "launch-missiles"})"), Error);
}

TEST_CASE("reports are deterministic and serialized with 17 significant digits") {
  const JobResult a = run_job(kEvalJob, R"({"seed": 5})");
  const JobResult b = run_job(kEvalJob, R"({"seed": 5})");
  CHECK(report_to_string(a) == report_to_string(b));
  // 10/3 rendered to 17 significant digits
  CHECK(report_to_string(a).find("3.3333333333333335") != std::string::npos);
}

TEST_CASE("qa equality job mode") {
  const char* job = R"({
    "command": "equality-check",
    "qa": {
      "f": {"log": {}},
      "g": {"affine": {"terms": [[2.0, "log"]], "offset": 1.0}},
      "interval": [1.0, 3.0]
    },
    "family": {"two_point": {}},
    "measure": {"uniform": {"nodes": 16}}
  })";
  const JobResult r = run_job(job);
  CHECK(r.exit_status == 0);
  CHECK(r.report.at("results").at("verdict") == "equal");
  CHECK(r.report.at("results").at("witness").at(0).get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("holder and qa eval jobs") {
  const char* holder_job = R"({
    "command": "eval",
    "holder": {"p": 2.0, "interval": [0.5, 8.0]},
    "family": {"projection": {"d": 2}},
    "measure": {"counting": {"d": 2}},
    "points": [[3.0, 4.0]]
  })";
  const JobResult r = run_job(holder_job);
  CHECK(r.report.at("results").at("values").at(0).at("holder").get<double>() ==
        doctest::Approx(std::sqrt(12.5)).epsilon(1e-13));

  const char* qa_job = R"({
    "command": "eval",
    "qa": {"f": {"log": {}}, "interval": [0.5, 8.0]},
    "family": {"projection": {"d": 2}},
    "measure": {"counting": {"d": 2}},
    "points": [[1.0, 4.0]]
  })";
  const JobResult r2 = run_job(qa_job);
  CHECK(r2.report.at("results").at("values").at(0).at("quasi_arithmetic").get<double>() ==
        doctest::Approx(2.0).epsilon(1e-12));
}
