#include "jobs.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "calculus.hpp"
#include "decide.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "report.hpp"

namespace meanlab {

namespace {

using nlohmann::ordered_json;

const ordered_json& require_field(const ordered_json& j, const char* key, const char* ctx) {
  if (!j.contains(key))
    fail(errc::parse, std::string("missing field '") + key + "' in " + ctx);
  return j.at(key);
}

Interval parse_interval(const ordered_json& j, const char* ctx) {
  if (!j.is_array() || j.size() != 2)
    fail(errc::parse, std::string("'interval' in ") + ctx + " must be [lo, hi]");
  return make_interval(j.at(0).get<double>(), j.at(1).get<double>());
}

GiniParams parse_gini(const ordered_json& j) {
  if (j.contains("a") || j.contains("b")) {
    if (!(j.contains("a") && j.contains("b")))
      fail(errc::parse, "conjugate Gini parameters need both 'a' and 'b'");
    return GiniParams::conjugate_pair(j.at("a").get<double>(), j.at("b").get<double>());
  }
  return GiniParams::from_roots(require_field(j, "p", "gini parameters").get<double>(),
                                require_field(j, "q", "gini parameters").get<double>());
}

GeneratorPair parse_pair(const ordered_json& j, const char* ctx) {
  if (!j.is_object()) fail(errc::parse, std::string(ctx) + " must be an object");
  const Interval I = parse_interval(require_field(j, "interval", ctx), ctx);
  if (j.contains("gini")) return make_gini_pair(parse_gini(j.at("gini")), I);
  const Expr f = Expr::from_json(require_field(j, "f", ctx));
  const Expr g = Expr::from_json(require_field(j, "g", ctx));
  const int smoothness = j.value("smoothness", 3);
  return GeneratorPair(f, g, I, smoothness);
}

Measure parse_measure(const ordered_json& j) {
  if (!j.is_object() || j.size() != 1) fail(errc::parse, "'measure' must be a single-key object");
  const auto it = j.begin();
  const std::string key = it.key();
  const ordered_json& v = it.value();
  if (key == "dirac_mix") {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& row : v) {
      if (!row.is_array() || row.size() != 2) fail(errc::parse, "dirac_mix atoms must be [node, weight]");
      atoms.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    }
    return Measure::dirac_mix(std::move(atoms));
  }
  if (key == "uniform") return Measure::uniform_quadrature(v.value("nodes", 64));
  if (key == "counting") return Measure::counting(require_field(v, "d", "counting measure").get<int>());
  if (key == "two_point") return Measure::two_point(require_field(v, "s", "two_point measure").get<double>());
  if (key == "labels")
    return Measure::labels_weighted(require_field(v, "weights", "label measure").get<std::vector<double>>());
  fail(errc::parse, "unknown measure kind '" + key + "'");
}

MeanFamily parse_family(const ordered_json& j) {
  if (!j.is_object() || j.size() != 1) fail(errc::parse, "'family' must be a single-key object");
  const auto it = j.begin();
  const std::string key = it.key();
  const ordered_json& v = it.value();
  if (key == "two_point") return MeanFamily::two_point();
  if (key == "projection") return MeanFamily::projection(require_field(v, "d", "projection family").get<int>());
  if (key == "weighted_arithmetic") {
    if (v.contains("phis")) {
      std::vector<Expr> phis;
      for (const auto& e : v.at("phis")) phis.push_back(Expr::from_json(e));
      return MeanFamily::weighted_arithmetic(std::move(phis));
    }
    if (v.contains("table"))
      return MeanFamily::weighted_arithmetic_table(v.at("table").get<std::vector<std::vector<double>>>());
    fail(errc::parse, "weighted_arithmetic family needs 'phis' or 'table'");
  }
  fail(errc::parse, "unknown family kind '" + key + "'");
}

std::vector<std::vector<double>> parse_points(const ordered_json& j, int dim) {
  std::vector<std::vector<double>> pts;
  if (!j.is_array() || j.empty()) fail(errc::parse, "'points' must be a nonempty array");
  const bool nested = j.at(0).is_array();
  if (nested) {
    for (const auto& row : j) pts.push_back(row.get<std::vector<double>>());
  } else {
    pts.push_back(j.get<std::vector<double>>());
  }
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim)
      fail(errc::parse, "each point needs " + std::to_string(dim) + " coordinates");
  return pts;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Context {
  ordered_json job;
  std::string command;
  int grid_points = 33;
  std::uint64_t seed = 0;
  std::optional<double> tol;

  DecideOptions options() const {
    DecideOptions o;
    o.seed = seed;
    if (tol) {
      o.match_tol = *tol;
      o.constancy_tol = *tol;
    }
    return o;
  }
};

ordered_json provenance(const Context& ctx, const Measure& mu, const DecideOptions& opts) {
  return ordered_json{{"grid_points", ctx.grid_points},
                      {"seed", ctx.seed},
                      {"measure_nodes", mu.size()},
                      {"tolerances",
                       ordered_json{{"match", opts.match_tol},
                                    {"constancy", opts.constancy_tol},
                                    {"witness_gap", opts.witness_gap},
                                    {"cross_validation", opts.cross_val_tol}}}};
}

JobResult finish(const Context& ctx, ordered_json results, std::string text, int exit_status) {
  JobResult r;
  r.report = ordered_json{{"tool", "meanlab"},
                          {"command", ctx.command},
                          {"job", ctx.job},
                          {"results", std::move(results)},
                          {"exit_status", exit_status}};
  r.text = "meanlab " + ctx.command + "\n" + std::move(text);
  r.exit_status = exit_status;
  return r;
}

JobResult run_eval(const Context& ctx) {
  const ordered_json& job = ctx.job;
  const Measure mu = parse_measure(require_field(job, "measure", "eval job"));
  const MeanFamily fam = parse_family(require_field(job, "family", "eval job"));
  const auto points = parse_points(require_field(job, "points", "eval job"), fam.dim());

  std::optional<GeneratorPair> pair;
  std::optional<GiniParams> gini;
  std::optional<double> holder_p;
  std::optional<Expr> qa_f;
  Interval I{};
  if (job.contains("pair")) {
    pair = parse_pair(job.at("pair"), "pair");
    I = pair->interval();
  } else if (job.contains("gini")) {
    gini = parse_gini(job.at("gini"));
    I = parse_interval(require_field(job.at("gini"), "interval", "gini"), "gini");
    pair = make_gini_pair(*gini, I);
  } else if (job.contains("holder")) {
    holder_p = require_field(job.at("holder"), "p", "holder").get<double>();
    I = parse_interval(require_field(job.at("holder"), "interval", "holder"), "holder");
    gini = GiniParams::from_roots(*holder_p, 0.0);
    pair = make_gini_pair(*gini, I);
  } else if (job.contains("qa")) {
    qa_f = Expr::from_json(require_field(job.at("qa"), "f", "qa"));
    I = parse_interval(require_field(job.at("qa"), "interval", "qa"), "qa");
    pair = GeneratorPair(*qa_f, Expr::constant(1.0), I, 3);
  } else {
    fail(errc::parse, "eval job needs one of 'pair', 'gini', 'holder', 'qa'");
  }

  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  for (const auto& x : points) {
    const double implicit = eval_implicit(*pair, fam, mu, x);
    const double explicit_v = eval_explicit(*pair, fam, mu, x);
    ordered_json row{{"x", x}, {"implicit", implicit}, {"explicit", explicit_v}};
    row["route_discrepancy"] = std::fabs(implicit - explicit_v);
    text << "  x = [";
    for (size_t i = 0; i < x.size(); ++i) text << (i ? ", " : "") << fmt17(x[i]);
    text << "]\n";
    text << "    implicit   " << fmt17(implicit) << "\n";
    text << "    explicit   " << fmt17(explicit_v) << "\n";
    if (gini) {
      double conj_den = 0.0;
      const double closed = eval_gini_closed(*gini, fam, mu, x,
                                             gini->kind == GiniParams::Kind::conjugate ? &conj_den : nullptr);
      row["closed"] = closed;
      row["closed_discrepancy"] = std::fabs(closed - implicit);
      if (gini->kind == GiniParams::Kind::conjugate) row["conjugate_denominator"] = conj_den;
      text << "    closed     " << fmt17(closed) << "\n";
    }
    if (holder_p) {
      const double h = eval_holder(*holder_p, fam, mu, x);
      row["holder"] = h;
      text << "    holder     " << fmt17(h) << "\n";
    }
    if (qa_f) {
      const double qa = eval_quasi_arithmetic(*qa_f, I, fam, mu, x);
      row["quasi_arithmetic"] = qa;
      row["qa_discrepancy"] = std::fabs(qa - explicit_v);
      text << "    quasi-arithmetic " << fmt17(qa) << "\n";
    }
    char disc[64];
    std::snprintf(disc, sizeof disc, "    route discrepancy %.3e\n", std::fabs(implicit - explicit_v));
    text << disc;
    rows.push_back(std::move(row));
  }

  ordered_json results{{"values", std::move(rows)}};
  results["provenance"] = provenance(ctx, mu, ctx.options());
  return finish(ctx, std::move(results), text.str(), 0);
}

JobResult run_equality(const Context& ctx) {
  const ordered_json& job = ctx.job;
  const Measure mu = parse_measure(require_field(job, "measure", "equality job"));
  const MeanFamily fam = parse_family(require_field(job, "family", "equality job"));
  const DecideOptions opts = ctx.options();

  DecisionReport rep;
  std::ostringstream text;
  if (job.contains("qa")) {
    const auto& qa = job.at("qa");
    const Expr f = Expr::from_json(require_field(qa, "f", "qa"));
    const Expr g = Expr::from_json(require_field(qa, "g", "qa"));
    const Interval I = parse_interval(require_field(qa, "interval", "qa"), "qa");
    const auto grid = chebyshev_grid(I, ctx.grid_points);
    rep = decide_equality_qa(f, g, I, fam, mu, grid, opts);
    text << "  mode: quasi-arithmetic, f = " << f.describe() << ", g = " << g.describe() << "\n";
  } else {
    const GeneratorPair pairA = parse_pair(require_field(job, "pair_a", "equality job"), "pair_a");
    const GeneratorPair pairB = parse_pair(require_field(job, "pair_b", "equality job"), "pair_b");
    const auto grid = chebyshev_grid(pairA.interval(), ctx.grid_points);
    rep = decide_equality(pairA, pairB, fam, mu, grid, opts);
    text << "  pair_a: f = " << pairA.f().describe() << ", g = " << pairA.g().describe() << "\n";
    text << "  pair_b: f = " << pairB.f().describe() << ", g = " << pairB.g().describe() << "\n";
  }
  text << "  family: " << fam.describe() << ", measure: " << mu.kind() << "\n";
  text << decision_to_text(rep);

  ordered_json results = decision_to_json(rep);
  results["provenance"] = provenance(ctx, mu, opts);
  return finish(ctx, std::move(results), text.str(), rep.exit_status());
}

JobResult run_homogeneity(const Context& ctx) {
  const ordered_json& job = ctx.job;
  const Measure mu = parse_measure(require_field(job, "measure", "homogeneity job"));
  const MeanFamily fam = parse_family(require_field(job, "family", "homogeneity job"));
  const DecideOptions opts = ctx.options();

  DecisionReport rep;
  std::optional<GeneratorPair> scan_pair;
  std::ostringstream text;
  if (job.contains("qa")) {
    const auto& qa = job.at("qa");
    const Expr f = Expr::from_json(require_field(qa, "f", "qa"));
    const Interval I = parse_interval(require_field(qa, "interval", "qa"), "qa");
    const auto grid = chebyshev_grid(I, ctx.grid_points);
    rep = classify_homogeneous_qa(f, I, fam, mu, grid, opts);
    scan_pair.emplace(f, Expr::constant(1.0), I, 3);
    text << "  mode: quasi-arithmetic, f = " << f.describe() << "\n";
  } else {
    const GeneratorPair pair = parse_pair(require_field(job, "pair", "homogeneity job"), "pair");
    const auto grid = chebyshev_grid(pair.interval(), ctx.grid_points);
    rep = classify_homogeneous(pair, fam, mu, grid, opts);
    scan_pair = pair;
    text << "  pair: f = " << pair.f().describe() << ", g = " << pair.g().describe() << "\n";
  }
  text << "  family: " << fam.describe() << ", measure: " << mu.kind() << "\n";
  text << decision_to_text(rep);

  ordered_json results = decision_to_json(rep);
  if (job.contains("scan")) {
    const auto& s = job.at("scan");
    const ScanReport scan = homogeneity_scan(*scan_pair, fam, mu, s.value("n_lambda", 15),
                                             s.value("n_x", 4), ctx.seed);
    results["scan"] = ordered_json{{"max_residual", scan.max_residual},
                                   {"worst_lambda", scan.worst_lambda},
                                   {"worst_x", scan.worst_x},
                                   {"lambda_one_residual", scan.lambda_one_residual},
                                   {"samples", scan.samples}};
    char line[128];
    std::snprintf(line, sizeof line, "  scan: max relative residual %.6e over %d samples\n",
                  scan.max_residual, scan.samples);
    text << line;
  }
  results["provenance"] = provenance(ctx, mu, opts);
  return finish(ctx, std::move(results), text.str(), rep.exit_status());
}

JobResult run_derivative_check(const Context& ctx) {
  const ordered_json& job = ctx.job;
  const Measure mu = parse_measure(require_field(job, "measure", "derivative job"));
  const MeanFamily fam = parse_family(require_field(job, "family", "derivative job"));
  const GeneratorPair pair = parse_pair(require_field(job, "pair", "derivative job"), "pair");
  if (!job.contains("points")) fail(errc::parse, "derivative-check job needs diagonal 'points'");
  const std::vector<double> points = job.at("points").get<std::vector<double>>();
  const int max_order = job.value("max_order", 3);
  if (max_order < 1 || max_order > 3) fail(errc::parse, "'max_order' must be 1, 2 or 3");
  const int d = fam.dim();

  // representative index tuples per order
  std::vector<std::vector<int>> tuples;
  for (int i = 1; i <= d; ++i) tuples.push_back({i});
  if (max_order >= 2) {
    tuples.push_back({1, 1});
    if (d >= 2) tuples.push_back({1, 2});
  }
  if (max_order >= 3) {
    tuples.push_back({1, 1, 1});
    if (d >= 2) tuples.push_back({1, 1, 2});
    if (d >= 3) tuples.push_back({1, 2, 3});
  }

  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  text << "  order indices          closed-form          finite-difference    rel-error\n";
  for (double x : points) {
    for (const auto& idx : tuples) {
      const int order = static_cast<int>(idx.size());
      double closed = 0.0;
      if (order == 1) closed = diag_d1(pair, fam, mu, x, idx[0]);
      if (order == 2) closed = diag_d2(pair, fam, mu, x, idx[0], idx[1]);
      if (order == 3) closed = diag_d3(pair, fam, mu, x, idx[0], idx[1], idx[2]);
      const double fd = fd_diag(pair, fam, mu, x, order, idx);
      const double rel = std::fabs(closed - fd) / (1.0 + std::fabs(closed));
      rows.push_back(ordered_json{{"x", x},
                                  {"order", order},
                                  {"indices", idx},
                                  {"closed", closed},
                                  {"finite_difference", fd},
                                  {"relative_error", rel}});
      std::string idx_str;
      for (int i : idx) idx_str += (idx_str.empty() ? "" : ",") + std::to_string(i);
      char line[160];
      std::snprintf(line, sizeof line, "  %5d %-16s %20.13e %20.13e %9.2e\n", order, idx_str.c_str(),
                    closed, fd, rel);
      text << line;
    }
  }
  ordered_json results{{"table", std::move(rows)}};
  results["provenance"] = provenance(ctx, mu, ctx.options());
  return finish(ctx, std::move(results), text.str(), 0);
}

JobResult run_moments(const Context& ctx) {
  const ordered_json& job = ctx.job;
  const Measure mu = parse_measure(require_field(job, "measure", "moments job"));
  const int max_order = job.value("max_order", 3);
  if (max_order < 1) fail(errc::parse, "'max_order' must be positive");

  ordered_json results;
  std::ostringstream text;
  results["first_moment"] = mu.first_moment();
  text << "  first moment  " << fmt17(mu.first_moment()) << "\n";
  ordered_json central = ordered_json::array();
  for (int n = 1; n <= max_order; ++n) {
    const double v = mu.central_moment(n);
    central.push_back(ordered_json{{"order", n}, {"value", v}});
    text << "  central[" << n << "]    " << fmt17(v) << "\n";
  }
  results["central_moments"] = std::move(central);
  results["provenance"] = provenance(ctx, mu, ctx.options());
  return finish(ctx, std::move(results), text.str(), 0);
}

}  // namespace

JobResult run_job(const std::string& job_text, const std::string& overrides_text) {
  Context ctx;
  try {
    ctx.job = ordered_json::parse(job_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse, std::string("malformed job file: ") + e.what());
  }
  if (!ctx.job.is_object()) fail(errc::parse, "job file must hold a JSON object");

  if (!overrides_text.empty()) {
    ordered_json ov;
    try {
      ov = ordered_json::parse(overrides_text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(errc::parse, std::string("malformed overrides: ") + e.what());
    }
    if (ov.contains("command")) {
      const std::string cmd = ov.at("command").get<std::string>();
      if (ctx.job.contains("command") && ctx.job.at("command").get<std::string>() != cmd)
        fail(errc::invalid_argument, "job file command '" +
                                         ctx.job.at("command").get<std::string>() +
                                         "' does not match the requested command '" + cmd + "'");
      ctx.job["command"] = cmd;
    }
    if (ov.contains("seed")) ctx.job["seed"] = ov.at("seed").get<std::uint64_t>();
    if (ov.contains("grid")) ctx.job["grid"] = ov.at("grid").get<int>();
    if (ov.contains("tol")) ctx.job["tol"] = ov.at("tol").get<double>();
  }

  try {
    ctx.command = require_field(ctx.job, "command", "job file").get<std::string>();
    ctx.seed = ctx.job.value("seed", std::uint64_t{0});
    ctx.grid_points = ctx.job.value("grid", 33);
    if (ctx.grid_points < 2) fail(errc::parse, "'grid' must be >= 2");
    if (ctx.job.contains("tol")) {
      ctx.tol = ctx.job.at("tol").get<double>();
      if (!(*ctx.tol > 0.0)) fail(errc::parse, "'tol' must be positive");
    }

    if (ctx.command == "eval") return run_eval(ctx);
    if (ctx.command == "equality-check") return run_equality(ctx);
    if (ctx.command == "homogeneity-classify") return run_homogeneity(ctx);
    if (ctx.command == "derivative-check") return run_derivative_check(ctx);
    if (ctx.command == "moments") return run_moments(ctx);
    fail(errc::parse, "unknown command '" + ctx.command + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse, std::string("job field error: ") + e.what());
  }
}

std::string report_to_string(const JobResult& result) { return dump_json17(result.report); }

}  // namespace meanlab
