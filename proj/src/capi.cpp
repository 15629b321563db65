#include "meanlab/meanlab.h"

#include <cstring>
#include <new>
#include <string>

#include "calculus.hpp"
#include "chebyshev.hpp"
#include "decide.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "expr.hpp"
#include "family.hpp"
#include "jobs.hpp"
#include "measure.hpp"
#include "report.hpp"

using namespace meanlab;

struct ml_expr {
  Expr v;
};
struct ml_pair {
  GeneratorPair v;
};
struct ml_measure {
  Measure v;
};
struct ml_family {
  MeanFamily v;
};
struct ml_report {
  std::string verdict;
  int exit_status = 0;
  nlohmann::ordered_json json;
};

namespace {

thread_local std::string t_last_error;

ml_status map_code(errc c) {
  switch (c) {
    case errc::invalid_argument: return ML_EINVAL;
    case errc::domain: return ML_EDOMAIN;
    case errc::capability: return ML_ECAPABILITY;
    case errc::singular: return ML_ESINGULAR;
    case errc::numerical: return ML_ENUMERIC;
    case errc::parse: return ML_EPARSE;
  }
  return ML_EUNKNOWN;
}

template <class Fn>
ml_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    t_last_error.clear();
    return ML_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return ML_EUNKNOWN;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ML_EUNKNOWN;
  }
}

ml_status need(bool ok, const char* msg) {
  if (ok) return ML_OK;
  t_last_error = msg;
  return ML_EINVAL;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> default_grid_or(const ml_pair* p, const double* grid, size_t n, int fallback) {
  if (grid && n) return std::vector<double>(grid, grid + n);
  return p->v.default_grid(fallback);
}

ml_report* wrap_decision(const DecisionReport& rep) {
  auto* r = new ml_report;
  r->verdict = verdict_name(rep.verdict);
  r->exit_status = rep.exit_status();
  r->json = decision_to_json(rep);
  return r;
}

}  // namespace

extern "C" {

const char* ml_status_name(ml_status s) {
  switch (s) {
    case ML_OK: return "ok";
    case ML_EINVAL: return "invalid-argument";
    case ML_EDOMAIN: return "domain";
    case ML_ECAPABILITY: return "capability";
    case ML_ESINGULAR: return "singular";
    case ML_ENUMERIC: return "numerical";
    case ML_EPARSE: return "parse";
    case ML_EUNKNOWN: return "unknown";
  }
  return "?";
}

const char* ml_last_error(void) { return t_last_error.c_str(); }

const char* ml_version(void) { return "0.1.0"; }

/* ---- expressions ---- */

ml_status ml_expr_parse(const char* json, ml_expr** out) {
  if (auto s = need(json && out, "ml_expr_parse: null argument")) return s;
  return guarded([&] { *out = new ml_expr{Expr::from_json(nlohmann::json::parse(json))}; });
}

ml_status ml_expr_eval(const ml_expr* e, double x, int order, double* out) {
  if (auto s = need(e && out, "ml_expr_eval: null argument")) return s;
  return guarded([&] { *out = e->v.deriv(x, order); });
}

void ml_expr_free(ml_expr* e) { delete e; }

/* ---- generator pairs ---- */

ml_status ml_pair_create(const ml_expr* f, const ml_expr* g, double lo, double hi, int smoothness,
                         ml_pair** out) {
  if (auto s = need(f && g && out, "ml_pair_create: null argument")) return s;
  return guarded([&] { *out = new ml_pair{GeneratorPair(f->v, g->v, make_interval(lo, hi), smoothness)}; });
}

ml_status ml_pair_parse(const char* json, ml_pair** out) {
  if (auto s = need(json && out, "ml_pair_parse: null argument")) return s;
  return guarded([&] {
    const auto j = nlohmann::ordered_json::parse(json);
    const auto I = make_interval(j.at("interval").at(0).get<double>(), j.at("interval").at(1).get<double>());
    if (j.contains("gini")) {
      const auto& gj = j.at("gini");
      GiniParams params = gj.contains("b")
                              ? GiniParams::conjugate_pair(gj.at("a").get<double>(), gj.at("b").get<double>())
                              : GiniParams::from_roots(gj.at("p").get<double>(), gj.at("q").get<double>());
      *out = new ml_pair{make_gini_pair(params, I)};
      return;
    }
    *out = new ml_pair{GeneratorPair(Expr::from_json(j.at("f")), Expr::from_json(j.at("g")), I,
                                     j.value("smoothness", 3))};
  });
}

ml_status ml_pair_gini(double pq_0, double pq_1, int conjugate, double lo, double hi, ml_pair** out) {
  if (auto s = need(out != nullptr, "ml_pair_gini: null output")) return s;
  return guarded([&] {
    const GiniParams params =
        conjugate ? GiniParams::conjugate_pair(pq_0, pq_1) : GiniParams::from_roots(pq_0, pq_1);
    *out = new ml_pair{make_gini_pair(params, make_interval(lo, hi))};
  });
}

void ml_pair_free(ml_pair* p) { delete p; }

ml_status ml_pair_det(const ml_pair* p, double x, double y, double* out) {
  if (auto s = need(p && out, "ml_pair_det: null argument")) return s;
  return guarded([&] { *out = p->v.det(x, y); });
}

ml_status ml_pair_det_partial(const ml_pair* p, int dx_order, int dy_order, double x, double y,
                              double* out) {
  if (auto s = need(p && out, "ml_pair_det_partial: null argument")) return s;
  return guarded([&] { *out = p->v.det_partial(dx_order, dy_order, x, y); });
}

ml_status ml_pair_wronskian(const ml_pair* p, double x, double* out) {
  if (auto s = need(p && out, "ml_pair_wronskian: null argument")) return s;
  return guarded([&] { *out = p->v.wronskian(x); });
}

ml_status ml_pair_phi(const ml_pair* p, double x, double* out) {
  if (auto s = need(p && out, "ml_pair_phi: null argument")) return s;
  return guarded([&] { *out = p->v.phi(x); });
}

ml_status ml_pair_psi(const ml_pair* p, double x, double* out) {
  if (auto s = need(p && out, "ml_pair_psi: null argument")) return s;
  return guarded([&] { *out = p->v.psi(x); });
}

ml_status ml_pair_phi_prime(const ml_pair* p, double x, double* out) {
  if (auto s = need(p && out, "ml_pair_phi_prime: null argument")) return s;
  return guarded([&] { *out = p->v.phi_prime(x); });
}

ml_status ml_pair_third_ratio(const ml_pair* p, double x, double* out) {
  if (auto s = need(p && out, "ml_pair_third_ratio: null argument")) return s;
  return guarded([&] { *out = p->v.third_ratio(x); });
}

ml_status ml_pair_chebyshev_check(const ml_pair* p, const double* grid, size_t n, int* sign_out,
                                  double* viol_x, double* viol_y) {
  if (auto s = need(p && sign_out, "ml_pair_chebyshev_check: null argument")) return s;
  return guarded([&] {
    const auto g = default_grid_or(p, grid, n, 65);
    const ChebyshevReport rep = p->v.is_chebyshev(g);
    *sign_out = rep.sign;
    if (rep.sign == 0) {
      if (viol_x) *viol_x = rep.x;
      if (viol_y) *viol_y = rep.y;
    }
  });
}

ml_status ml_pair_transform(const ml_pair* p, double a, double b, double c, double d, ml_pair** out) {
  if (auto s = need(p && out, "ml_pair_transform: null argument")) return s;
  return guarded([&] { *out = new ml_pair{p->v.transformed(make_witness(a, b, c, d))}; });
}

ml_status ml_pair_dilate(const ml_pair* p, double lambda, ml_pair** out) {
  if (auto s = need(p && out, "ml_pair_dilate: null argument")) return s;
  return guarded([&] { *out = new ml_pair{p->v.dilated(lambda)}; });
}

ml_status ml_pair_recover_witness(const ml_pair* pair_a, const ml_pair* pair_b, double x1, double x2,
                                  const double* grid, size_t n, int* found, double w_out[4]) {
  if (auto s = need(pair_a && pair_b && found && w_out, "ml_pair_recover_witness: null argument")) return s;
  return guarded([&] {
    const auto g = default_grid_or(pair_a, grid, n, 65);
    const auto w = recover_witness(pair_a->v, pair_b->v, x1, x2, g);
    *found = w.has_value() ? 1 : 0;
    if (w) {
      w_out[0] = w->a;
      w_out[1] = w->b;
      w_out[2] = w->c;
      w_out[3] = w->d;
    }
  });
}

/* ---- measures ---- */

ml_status ml_measure_two_point(double s, ml_measure** out) {
  if (auto st = need(out != nullptr, "ml_measure_two_point: null output")) return st;
  return guarded([&] { *out = new ml_measure{Measure::two_point(s)}; });
}

ml_status ml_measure_uniform(int nodes, ml_measure** out) {
  if (auto st = need(out != nullptr, "ml_measure_uniform: null output")) return st;
  return guarded([&] { *out = new ml_measure{Measure::uniform_quadrature(nodes)}; });
}

ml_status ml_measure_counting(int d, ml_measure** out) {
  if (auto st = need(out != nullptr, "ml_measure_counting: null output")) return st;
  return guarded([&] { *out = new ml_measure{Measure::counting(d)}; });
}

ml_status ml_measure_dirac_mix(const double* nodes, const double* weights, size_t n, ml_measure** out) {
  if (auto st = need(nodes && weights && out, "ml_measure_dirac_mix: null argument")) return st;
  return guarded([&] {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(n);
    for (size_t k = 0; k < n; ++k) atoms.emplace_back(nodes[k], weights[k]);
    *out = new ml_measure{Measure::dirac_mix(std::move(atoms))};
  });
}

ml_status ml_measure_parse(const char* json, ml_measure** out) {
  if (auto st = need(json && out, "ml_measure_parse: null argument")) return st;
  return guarded([&] {
    const auto j = nlohmann::ordered_json::parse(json);
    if (!j.is_object() || j.size() != 1) fail(errc::parse, "measure must be a single-key object");
    const auto it = j.begin();
    const std::string key = it.key();
    const nlohmann::json& v = it.value();
    if (key == "two_point") {
      *out = new ml_measure{Measure::two_point(v.at("s").get<double>())};
    } else if (key == "uniform") {
      *out = new ml_measure{Measure::uniform_quadrature(v.value("nodes", 64))};
    } else if (key == "counting") {
      *out = new ml_measure{Measure::counting(v.at("d").get<int>())};
    } else if (key == "labels") {
      *out = new ml_measure{Measure::labels_weighted(v.at("weights").get<std::vector<double>>())};
    } else if (key == "dirac_mix") {
      std::vector<std::pair<double, double>> atoms;
      for (const auto& row : v) atoms.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
      *out = new ml_measure{Measure::dirac_mix(std::move(atoms))};
    } else {
      fail(errc::parse, "unknown measure kind '" + key + "'");
    }
  });
}

void ml_measure_free(ml_measure* m) { delete m; }

size_t ml_measure_size(const ml_measure* m) { return m ? m->v.size() : 0; }

ml_status ml_measure_node(const ml_measure* m, size_t k, double* t, double* w) {
  if (auto st = need(m && t && w, "ml_measure_node: null argument")) return st;
  if (auto st = need(k < m->v.size(), "ml_measure_node: index out of range")) return st;
  *t = m->v.nodes()[k];
  *w = m->v.weights()[k];
  return ML_OK;
}

ml_status ml_measure_integrate(const ml_measure* m, double (*phi)(double, void*), void* ctx, double* out) {
  if (auto st = need(m && phi && out, "ml_measure_integrate: null argument")) return st;
  return guarded([&] { *out = m->v.integrate([&](double t) { return phi(t, ctx); }); });
}

ml_status ml_measure_first_moment(const ml_measure* m, double* out) {
  if (auto st = need(m && out, "ml_measure_first_moment: null argument")) return st;
  return guarded([&] { *out = m->v.first_moment(); });
}

ml_status ml_measure_central_moment(const ml_measure* m, int n, double* out) {
  if (auto st = need(m && out, "ml_measure_central_moment: null argument")) return st;
  return guarded([&] { *out = m->v.central_moment(n); });
}

/* ---- families ---- */

ml_status ml_family_two_point(ml_family** out) {
  if (auto st = need(out != nullptr, "ml_family_two_point: null output")) return st;
  return guarded([&] { *out = new ml_family{MeanFamily::two_point()}; });
}

ml_status ml_family_projection(int d, ml_family** out) {
  if (auto st = need(out != nullptr, "ml_family_projection: null output")) return st;
  return guarded([&] { *out = new ml_family{MeanFamily::projection(d)}; });
}

ml_status ml_family_parse(const char* json, ml_family** out) {
  if (auto st = need(json && out, "ml_family_parse: null argument")) return st;
  return guarded([&] {
    const auto j = nlohmann::ordered_json::parse(json);
    if (!j.is_object() || j.size() != 1) fail(errc::parse, "family must be a single-key object");
    const auto it = j.begin();
    const std::string key = it.key();
    const nlohmann::json& v = it.value();
    if (key == "two_point") {
      *out = new ml_family{MeanFamily::two_point()};
    } else if (key == "projection") {
      *out = new ml_family{MeanFamily::projection(v.at("d").get<int>())};
    } else if (key == "weighted_arithmetic") {
      if (v.contains("phis")) {
        std::vector<Expr> phis;
        for (const auto& e : v.at("phis")) phis.push_back(Expr::from_json(e));
        *out = new ml_family{MeanFamily::weighted_arithmetic(std::move(phis))};
      } else {
        *out = new ml_family{
            MeanFamily::weighted_arithmetic_table(v.at("table").get<std::vector<std::vector<double>>>())};
      }
    } else {
      fail(errc::parse, "unknown family kind '" + key + "'");
    }
  });
}

void ml_family_free(ml_family* f) { delete f; }

int ml_family_dim(const ml_family* f) { return f ? f->v.dim() : 0; }

ml_status ml_family_eval(const ml_family* f, const double* x, size_t d, double t, double* out) {
  if (auto st = need(f && x && out, "ml_family_eval: null argument")) return st;
  return guarded([&] { *out = f->v.eval(std::span<const double>(x, d), t); });
}

ml_status ml_family_partial(const ml_family* f, int i, const double* x, size_t d, double t, double* out) {
  if (auto st = need(f && x && out, "ml_family_partial: null argument")) return st;
  return guarded([&] { *out = f->v.partial(i, std::span<const double>(x, d), t); });
}

ml_status ml_family_centered_partial(const ml_family* f, const ml_measure* mu, int i, const double* x,
                                     size_t d, double t, double* out) {
  if (auto st = need(f && mu && x && out, "ml_family_centered_partial: null argument")) return st;
  return guarded([&] { *out = f->v.centered_partial(mu->v, i, std::span<const double>(x, d), t); });
}

ml_status ml_family_nondegeneracy(const ml_family* f, const ml_measure* mu, double x, double* mt1_mass,
                                  int triple_out[3], double* mt0_value, int* satisfied) {
  if (auto st = need(f && mu, "ml_family_nondegeneracy: null argument")) return st;
  return guarded([&] {
    const NondegeneracyReport rep = f->v.nondegeneracy(mu->v, x);
    if (mt1_mass) *mt1_mass = rep.mt1_mass;
    if (triple_out) {
      triple_out[0] = rep.mt0_triple[0];
      triple_out[1] = rep.mt0_triple[1];
      triple_out[2] = rep.mt0_triple[2];
    }
    if (mt0_value) *mt0_value = rep.mt0_value;
    if (satisfied) *satisfied = rep.satisfied ? 1 : 0;
  });
}

/* ---- evaluation ---- */

ml_status ml_eval_implicit(const ml_pair* p, const ml_family* f, const ml_measure* mu, const double* x,
                           size_t d, double* out) {
  if (auto st = need(p && f && mu && x && out, "ml_eval_implicit: null argument")) return st;
  return guarded([&] { *out = eval_implicit(p->v, f->v, mu->v, std::span<const double>(x, d)); });
}

ml_status ml_eval_explicit(const ml_pair* p, const ml_family* f, const ml_measure* mu, const double* x,
                           size_t d, double* out) {
  if (auto st = need(p && f && mu && x && out, "ml_eval_explicit: null argument")) return st;
  return guarded([&] { *out = eval_explicit(p->v, f->v, mu->v, std::span<const double>(x, d)); });
}

ml_status ml_eval_quasi_arithmetic(const ml_expr* fn, double lo, double hi, const ml_family* f,
                                   const ml_measure* mu, const double* x, size_t d, double* out) {
  if (auto st = need(fn && f && mu && x && out, "ml_eval_quasi_arithmetic: null argument")) return st;
  return guarded([&] {
    *out = eval_quasi_arithmetic(fn->v, make_interval(lo, hi), f->v, mu->v, std::span<const double>(x, d));
  });
}

ml_status ml_eval_weighted_qa(const ml_expr* fn, double lo, double hi, const double* x, const double* t,
                              size_t d, double* out) {
  if (auto st = need(fn && x && t && out, "ml_eval_weighted_qa: null argument")) return st;
  return guarded([&] {
    *out = eval_weighted_qa(fn->v, make_interval(lo, hi), std::span<const double>(x, d),
                            std::span<const double>(t, d));
  });
}

ml_status ml_eval_gini(double pq_0, double pq_1, int conjugate, const ml_family* f, const ml_measure* mu,
                       const double* x, size_t d, double* out) {
  if (auto st = need(f && mu && x && out, "ml_eval_gini: null argument")) return st;
  return guarded([&] {
    const GiniParams params =
        conjugate ? GiniParams::conjugate_pair(pq_0, pq_1) : GiniParams::from_roots(pq_0, pq_1);
    *out = eval_gini_closed(params, f->v, mu->v, std::span<const double>(x, d));
  });
}

ml_status ml_eval_holder(double p, const ml_family* f, const ml_measure* mu, const double* x, size_t d,
                         double* out) {
  if (auto st = need(f && mu && x && out, "ml_eval_holder: null argument")) return st;
  return guarded([&] { *out = eval_holder(p, f->v, mu->v, std::span<const double>(x, d)); });
}

ml_status ml_eval_gini_discrete(double pq_0, double pq_1, int conjugate, const double* x,
                                const double* weights, size_t d, double* out) {
  if (auto st = need(x && out, "ml_eval_gini_discrete: null argument")) return st;
  return guarded([&] {
    const GiniParams params =
        conjugate ? GiniParams::conjugate_pair(pq_0, pq_1) : GiniParams::from_roots(pq_0, pq_1);
    *out = eval_gini_discrete(params, std::span<const double>(x, d),
                              weights ? std::span<const double>(weights, d) : std::span<const double>{});
  });
}

/* ---- diagonal derivatives ---- */

ml_status ml_diag_d1(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int i,
                     double* out) {
  if (auto st = need(p && f && mu && out, "ml_diag_d1: null argument")) return st;
  return guarded([&] { *out = diag_d1(p->v, f->v, mu->v, x, i); });
}

ml_status ml_diag_d2(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int i, int j,
                     double* out) {
  if (auto st = need(p && f && mu && out, "ml_diag_d2: null argument")) return st;
  return guarded([&] { *out = diag_d2(p->v, f->v, mu->v, x, i, j); });
}

ml_status ml_diag_d3(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int i, int j,
                     int l, double* out) {
  if (auto st = need(p && f && mu && out, "ml_diag_d3: null argument")) return st;
  return guarded([&] { *out = diag_d3(p->v, f->v, mu->v, x, i, j, l); });
}

ml_status ml_fd_diag(const ml_pair* p, const ml_family* f, const ml_measure* mu, double x, int order,
                     const int* indices, double h, double* out) {
  if (auto st = need(p && f && mu && indices && out, "ml_fd_diag: null argument")) return st;
  return guarded([&] {
    *out = fd_diag(p->v, f->v, mu->v, x, order, std::span<const int>(indices, static_cast<size_t>(order)), h);
  });
}

/* ---- deciders ---- */

ml_status ml_decide_equality(const ml_pair* pair_a, const ml_pair* pair_b, const ml_family* f,
                             const ml_measure* mu, const double* grid, size_t n, uint64_t seed,
                             ml_report** out) {
  if (auto st = need(pair_a && pair_b && f && mu && out, "ml_decide_equality: null argument")) return st;
  return guarded([&] {
    const auto g = default_grid_or(pair_a, grid, n, 33);
    DecideOptions opts;
    opts.seed = seed;
    *out = wrap_decision(decide_equality(pair_a->v, pair_b->v, f->v, mu->v, g, opts));
  });
}

ml_status ml_decide_equality_qa(const ml_expr* fn_f, const ml_expr* fn_g, double lo, double hi,
                                const ml_family* f, const ml_measure* mu, const double* grid, size_t n,
                                uint64_t seed, ml_report** out) {
  if (auto st = need(fn_f && fn_g && f && mu && out, "ml_decide_equality_qa: null argument")) return st;
  return guarded([&] {
    const Interval I = make_interval(lo, hi);
    const auto g = (grid && n) ? std::vector<double>(grid, grid + n) : chebyshev_grid(I, 33);
    DecideOptions opts;
    opts.seed = seed;
    *out = wrap_decision(decide_equality_qa(fn_f->v, fn_g->v, I, f->v, mu->v, g, opts));
  });
}

ml_status ml_classify_homogeneous(const ml_pair* p, const ml_family* f, const ml_measure* mu,
                                  const double* grid, size_t n, uint64_t seed, ml_report** out) {
  if (auto st = need(p && f && mu && out, "ml_classify_homogeneous: null argument")) return st;
  return guarded([&] {
    const auto g = default_grid_or(p, grid, n, 33);
    DecideOptions opts;
    opts.seed = seed;
    *out = wrap_decision(classify_homogeneous(p->v, f->v, mu->v, g, opts));
  });
}

ml_status ml_classify_homogeneous_qa(const ml_expr* fn, double lo, double hi, const ml_family* f,
                                     const ml_measure* mu, const double* grid, size_t n, uint64_t seed,
                                     ml_report** out) {
  if (auto st = need(fn && f && mu && out, "ml_classify_homogeneous_qa: null argument")) return st;
  return guarded([&] {
    const Interval I = make_interval(lo, hi);
    const auto g = (grid && n) ? std::vector<double>(grid, grid + n) : chebyshev_grid(I, 33);
    DecideOptions opts;
    opts.seed = seed;
    *out = wrap_decision(classify_homogeneous_qa(fn->v, I, f->v, mu->v, g, opts));
  });
}

ml_status ml_homogeneity_scan(const ml_pair* p, const ml_family* f, const ml_measure* mu, int n_lambda,
                              int n_x, uint64_t seed, ml_report** out) {
  if (auto st = need(p && f && mu && out, "ml_homogeneity_scan: null argument")) return st;
  return guarded([&] {
    const ScanReport scan = homogeneity_scan(p->v, f->v, mu->v, n_lambda, n_x, seed);
    auto* r = new ml_report;
    r->verdict = "report";
    r->exit_status = 0;
    r->json = nlohmann::ordered_json{{"max_residual", scan.max_residual},
                                     {"worst_lambda", scan.worst_lambda},
                                     {"worst_x", scan.worst_x},
                                     {"lambda_one_residual", scan.lambda_one_residual},
                                     {"samples", scan.samples}};
    *out = r;
  });
}

/* ---- interval helpers ---- */

ml_status ml_ratio_set(double lo, double hi, double* out_lo, double* out_hi) {
  if (auto st = need(out_lo && out_hi, "ml_ratio_set: null output")) return st;
  return guarded([&] {
    const Interval r = ratio_set(make_interval(lo, hi));
    *out_lo = r.lo;
    *out_hi = r.hi;
  });
}

ml_status ml_lambda_section(double lo, double hi, double lambda, double* out_lo, double* out_hi) {
  if (auto st = need(out_lo && out_hi, "ml_lambda_section: null output")) return st;
  return guarded([&] {
    const Interval r = lambda_section(make_interval(lo, hi), lambda);
    *out_lo = r.lo;
    *out_hi = r.hi;
  });
}

/* ---- reports ---- */

const char* ml_report_verdict(const ml_report* r) { return r ? r->verdict.c_str() : ""; }

int ml_report_exit_status(const ml_report* r) { return r ? r->exit_status : 0; }

ml_status ml_report_json(const ml_report* r, char** out) {
  if (auto st = need(r && out, "ml_report_json: null argument")) return st;
  return guarded([&] { *out = dup_string(dump_json17(r->json)); });
}

void ml_report_free(ml_report* r) { delete r; }

void ml_string_free(char* s) { delete[] s; }

/* ---- batch jobs ---- */

ml_status ml_run_job(const char* job_json, const char* overrides_json, char** report_json,
                     char** report_text, int* exit_status) {
  if (auto st = need(job_json != nullptr, "ml_run_job: null job")) return st;
  return guarded([&] {
    const JobResult result = run_job(job_json, overrides_json ? overrides_json : "");
    if (report_json) *report_json = dup_string(report_to_string(result));
    if (report_text) *report_text = dup_string(result.text);
    if (exit_status) *exit_status = result.exit_status;
  });
}

} /* extern "C" */
