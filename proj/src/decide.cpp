#include "decide.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "errors.hpp"
#include "evaluate.hpp"

namespace meanlab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double rel_dev(double a, double b) { return std::fabs(a - b) / (1.0 + std::max(std::fabs(a), std::fabs(b))); }

void check_grid(std::span<const double> grid, const Interval& I, size_t min_points) {
  if (grid.size() < min_points)
    fail(errc::invalid_argument,
         "decision grid needs at least " + std::to_string(min_points) + " points");
  for (size_t k = 0; k < grid.size(); ++k) {
    I.require(grid[k], "grid point");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      fail(errc::invalid_argument, "decision grid must be strictly increasing");
  }
}

// mean evaluation that tolerates non-normalized pairs
double mean_value(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                  std::span<const double> x) {
  if (pair.normalized_form()) return eval_explicit(pair, fam, mu, x);
  return eval_implicit(pair, fam, mu, x);
}

// nondegeneracy sweep; appends the summary checks and returns overall status
bool nondegeneracy_sweep(const MeanFamily& fam, const Measure& mu, std::span<const double> grid,
                         bool need_mt0, std::vector<Check>& conditions) {
  double worst_mass = 0.0;
  double worst_mt0 = INFINITY;
  bool ok = true;
  for (double x : grid) {
    const NondegeneracyReport nd = fam.nondegeneracy(mu, x);
    worst_mass = std::max(worst_mass, nd.mt1_mass);
    worst_mt0 = std::min(worst_mt0, std::fabs(nd.mt0_value));
    if (!nd.mt1_ok || (need_mt0 && !nd.mt0_ok)) ok = false;
  }
  conditions.push_back({"mt1_vanishing_mass", worst_mass, 1.0, worst_mass < 1.0 - 1e-12,
                        "mu-mass of nodes with all centered partials zero (max over grid)"});
  if (need_mt0)
    conditions.push_back({"mt0_triple_integral", worst_mt0, 1e-12, worst_mt0 > 1e-12,
                          "min over grid of the best |<d_i* d_j* d_l*>|"});
  return ok;
}

std::vector<std::vector<double>> counterexample_candidates(const Interval& I, int d,
                                                           std::span<const double> grid, int samples,
                                                           std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  // structured spread points first: alternating low/high grid values
  const size_t n = grid.size();
  for (size_t k = 0; k < 4 && 2 * k + 1 < n; ++k) {
    std::vector<double> x(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = (i % 2 == 0) ? grid[k] : grid[n - 1 - k];
    out.push_back(std::move(x));
  }
  std::mt19937_64 rng(seed);
  const double inset = 0.05 * I.width();
  std::uniform_real_distribution<double> u(I.lo + inset, I.hi - inset);
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = u(rng);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::not_equal: return "not-equal";
    case Verdict::homogeneous: return "homogeneous";
    case Verdict::not_homogeneous: return "not-homogeneous";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

DecisionReport decide_equality(const GeneratorPair& pairA, const GeneratorPair& pairB,
                               const MeanFamily& fam, const Measure& mu, std::span<const double> grid,
                               const DecideOptions& opts) {
  if (pairA.smoothness() < 3 || pairB.smoothness() < 3)
    fail(errc::capability, "equality decision needs both pairs in smoothness class >= 3");
  if (rel_dev(pairA.interval().lo, pairB.interval().lo) > 1e-12 ||
      rel_dev(pairA.interval().hi, pairB.interval().hi) > 1e-12)
    fail(errc::invalid_argument, "equality decision needs both pairs on the same interval");
  check_grid(grid, pairA.interval(), 17);

  DecisionReport rep;
  rep.grid.assign(grid.begin(), grid.end());

  if (!nondegeneracy_sweep(fam, mu, grid, /*need_mt0=*/true, rep.conditions)) {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "nondegeneracy failed: the family/measure cannot separate third-order data";
    return rep;
  }

  double phi_res = 0.0, psi_res = 0.0;
  for (double x : grid) {
    phi_res = std::max(phi_res, rel_dev(pairA.phi(x), pairB.phi(x)));
    psi_res = std::max(psi_res, rel_dev(pairA.psi(x), pairB.psi(x)));
  }
  const bool match = phi_res <= opts.match_tol && psi_res <= opts.match_tol;
  rep.conditions.push_back({"phi_match", phi_res, opts.match_tol, phi_res <= opts.match_tol,
                            "max relative |Phi_A - Phi_B| over grid"});
  rep.conditions.push_back({"psi_match", psi_res, opts.match_tol, psi_res <= opts.match_tol,
                            "max relative |Psi_A - Psi_B| over grid"});

  if (match) {
    const double x1 = grid[grid.size() / 4];
    const double x2 = grid[(3 * grid.size()) / 4];
    const auto w = recover_witness(pairB, pairA, x1, x2, grid);
    if (w) {
      rep.verdict = Verdict::equal;
      rep.witness = *w;
      rep.conditions.push_back({"witness_verified", 0.0, 1e-8, true,
                                "pair_b reconstructed as a nonsingular combination of pair_a"});
    } else {
      rep.verdict = Verdict::indeterminate;
      rep.detail = "Phi/Psi agree on the grid but no witness certificate could be verified";
      rep.conditions.push_back({"witness_verified", 1.0, 1e-8, false, "witness recovery failed"});
    }
    return rep;
  }

  // separated invariants: look for a direct evaluation counterexample
  const int d = fam.dim();
  double best_gap = -1.0;
  std::vector<double> best_x;
  for (const auto& x : counterexample_candidates(pairA.interval(), d, grid, opts.sample_count, opts.seed)) {
    try {
      const double gap = std::fabs(mean_value(pairA, fam, mu, x) - mean_value(pairB, fam, mu, x));
      if (gap > best_gap) {
        best_gap = gap;
        best_x = x;
      }
    } catch (const Error&) {
      // unevaluable candidate (e.g. non-Chebyshev pair off the window): skip
    }
  }
  rep.conditions.push_back({"evaluation_gap", best_gap, opts.witness_gap, best_gap > opts.witness_gap,
                            "largest |M_A(x) - M_B(x)| over the candidate sample"});
  if (best_gap > opts.witness_gap) {
    rep.verdict = Verdict::not_equal;
    rep.counterexample = Counterexample{best_x, std::nullopt, best_gap};
  } else {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "invariants differ but no separating sample was found";
  }
  return rep;
}

DecisionReport decide_equality_qa(const Expr& f, const Expr& g, const Interval& I, const MeanFamily& fam,
                                  const Measure& mu, std::span<const double> grid,
                                  const DecideOptions& opts) {
  check_grid(grid, I, 17);
  for (double x : grid) {
    const Jet jf = f.jet(x);
    const Jet jg = g.jet(x);
    if (std::fabs(jf.d1) <= 1e-14 * (1.0 + std::fabs(jf.v)) ||
        std::fabs(jg.d1) <= 1e-14 * (1.0 + std::fabs(jg.v)))
      fail(errc::singular, "f' or g' vanishes at grid point x = " + fmt(x));
  }

  DecisionReport rep;
  rep.grid.assign(grid.begin(), grid.end());
  if (!nondegeneracy_sweep(fam, mu, grid, /*need_mt0=*/false, rep.conditions)) {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "vanishing-mass condition failed: the measure sees no variation in the family";
    return rep;
  }

  double res = 0.0;
  for (double x : grid) {
    const Jet jf = f.jet(x);
    const Jet jg = g.jet(x);
    res = std::max(res, rel_dev(jf.d2 / jf.d1, jg.d2 / jg.d1));
  }
  rep.conditions.push_back(
      {"log_derivative_match", res, opts.match_tol, res <= opts.match_tol, "max relative |f''/f' - g''/g'|"});

  if (res <= opts.match_tol) {
    const double x1 = grid[grid.size() / 4];
    const double x2 = grid[(3 * grid.size()) / 4];
    const double f1 = f.value(x1), f2 = f.value(x2);
    const double g1 = g.value(x1), g2 = g.value(x2);
    if (std::fabs(f2 - f1) <= 1e-14 * (1.0 + std::fabs(f1)))
      fail(errc::singular, "anchor values of f coincide; cannot solve for (a, b)");
    const double a = (g2 - g1) / (f2 - f1);
    const double b = g1 - a * f1;
    double wres = 0.0;
    for (double x : grid) {
      const Jet jf = f.jet(x);
      const Jet jg = g.jet(x);
      wres = std::max(wres, std::fabs(jg.v - (a * jf.v + b)) / (1.0 + std::fabs(jg.v)));
      wres = std::max(wres, std::fabs(jg.d1 - a * jf.d1) / (1.0 + std::fabs(jg.d1)));
    }
    rep.conditions.push_back({"affine_witness_residual", wres, 1e-8, wres <= 1e-8,
                              "grid residual of g = a*f + b (values and first derivatives)"});
    if (wres <= 1e-8 && std::fabs(a) > 1e-14) {
      rep.verdict = Verdict::equal;
      rep.witness = EquivalenceWitness{a, b, 0.0, 1.0};  // g = a*f + b*1, 1 = 0*f + 1*1
    } else {
      rep.verdict = Verdict::indeterminate;
      rep.detail = "f''/f' matches g''/g' but the affine witness failed grid verification";
    }
    return rep;
  }

  const int d = fam.dim();
  double best_gap = -1.0;
  std::vector<double> best_x;
  for (const auto& x : counterexample_candidates(I, d, grid, opts.sample_count, opts.seed)) {
    try {
      const double gap =
          std::fabs(eval_quasi_arithmetic(f, I, fam, mu, x) - eval_quasi_arithmetic(g, I, fam, mu, x));
      if (gap > best_gap) {
        best_gap = gap;
        best_x = x;
      }
    } catch (const Error&) {
    }
  }
  rep.conditions.push_back({"evaluation_gap", best_gap, opts.witness_gap, best_gap > opts.witness_gap,
                            "largest |A_f(x) - A_g(x)| over the candidate sample"});
  if (best_gap > opts.witness_gap) {
    rep.verdict = Verdict::not_equal;
    rep.counterexample = Counterexample{best_x, std::nullopt, best_gap};
  } else {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "log-derivatives differ but no separating sample was found";
  }
  return rep;
}

namespace {

// constancy of v over the grid: max deviation from the mean, scale-relative
struct Constancy {
  double mean = 0.0;
  double deviation = 0.0;
  bool constant(double tol) const { return deviation <= tol * (1.0 + std::fabs(mean)); }
};

Constancy constancy_of(const std::vector<double>& v) {
  Constancy c;
  for (double x : v) c.mean += x;
  c.mean /= static_cast<double>(v.size());
  for (double x : v) c.deviation = std::max(c.deviation, std::fabs(x - c.mean));
  return c;
}

GiniParams roots_of_characteristic(double alpha, double beta) {
  // r^2 - (alpha+1) r - beta = 0
  const double s = alpha + 1.0;
  const double disc = s * s + 4.0 * beta;
  if (std::fabs(disc) < 1e-10) return GiniParams::from_roots(0.5 * s, 0.5 * s);
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    return GiniParams::from_roots(0.5 * (s + root), 0.5 * (s - root));
  }
  return GiniParams::conjugate_pair(0.5 * s, 0.5 * std::sqrt(-disc));
}

struct HomogeneityGap {
  double gap = -1.0;
  double lambda = 1.0;
  std::vector<double> x;
};

template <class EvalFn>
HomogeneityGap scan_for_gap(const Interval& I, int d, EvalFn&& mean_at, int n_lambda, int n_x,
                            std::uint64_t seed, bool relative) {
  const Interval ratio = ratio_set(I);
  std::mt19937_64 rng(seed);
  HomogeneityGap best;
  const double r_inset = 0.05 * ratio.width();
  for (int a = 0; a < n_lambda; ++a) {
    const double lambda = (n_lambda == 1) ? 1.0
                                          : ratio.lo + r_inset +
                                                (ratio.width() - 2.0 * r_inset) * a /
                                                    static_cast<double>(n_lambda - 1);
    Interval sec{};
    try {
      sec = lambda_section(I, lambda);
    } catch (const Error&) {
      continue;
    }
    const double s_inset = 0.05 * sec.width();
    std::uniform_real_distribution<double> u(sec.lo + s_inset, sec.hi - s_inset);
    for (int s = 0; s < n_x; ++s) {
      std::vector<double> x(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = u(rng);
      std::vector<double> lx(x);
      for (double& xi : lx) xi *= lambda;
      try {
        const double m = mean_at(x);
        const double ml = mean_at(lx);
        double gap = std::fabs(ml - lambda * m);
        if (relative) gap /= 1.0 + std::fabs(lambda * m);
        if (gap > best.gap) {
          best.gap = gap;
          best.lambda = lambda;
          best.x = x;
        }
      } catch (const Error&) {
      }
    }
  }
  return best;
}

}  // namespace

DecisionReport classify_homogeneous(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                                    std::span<const double> grid, const DecideOptions& opts) {
  if (!(pair.interval().lo > 0.0))
    fail(errc::invalid_argument, "homogeneity classification needs I inside (0, inf)");
  if (pair.smoothness() < 3) fail(errc::capability, "homogeneity classification needs smoothness >= 3");
  if (!fam.homogeneous()) fail(errc::invalid_argument, "family must be homogeneous");
  check_grid(grid, pair.interval(), 2);

  DecisionReport rep;
  rep.grid.assign(grid.begin(), grid.end());

  // one point suffices for the nondegeneracy conditions of a homogeneous family
  const double x0 = grid[grid.size() / 2];
  const NondegeneracyReport nd = fam.nondegeneracy(mu, x0);
  rep.conditions.push_back({"mt1_vanishing_mass", nd.mt1_mass, 1.0, nd.mt1_ok,
                            "mu-mass of nodes with all centered partials zero at x0"});
  rep.conditions.push_back(
      {"mt0_triple_integral", std::fabs(nd.mt0_value), 1e-12, nd.mt0_ok, "best |<d_i* d_j* d_l*>| at x0"});
  if (!nd.satisfied) {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "nondegeneracy failed at x0; the classifier cannot see the invariants";
    return rep;
  }

  std::vector<double> alpha, beta;
  alpha.reserve(grid.size());
  beta.reserve(grid.size());
  for (double x : grid) {
    alpha.push_back(x * pair.phi(x));
    beta.push_back(x * x * pair.psi(x));
  }
  const Constancy ca = constancy_of(alpha);
  const Constancy cb = constancy_of(beta);
  rep.conditions.push_back({"alpha_constancy", ca.deviation, opts.constancy_tol * (1.0 + std::fabs(ca.mean)),
                            ca.constant(opts.constancy_tol), "max deviation of x*Phi(x) from its grid mean"});
  rep.conditions.push_back({"beta_constancy", cb.deviation, opts.constancy_tol * (1.0 + std::fabs(cb.mean)),
                            cb.constant(opts.constancy_tol),
                            "max deviation of x^2*Psi(x) from its grid mean"});

  if (ca.constant(opts.constancy_tol) && cb.constant(opts.constancy_tol)) {
    const GiniParams params = roots_of_characteristic(ca.mean, cb.mean);
    if (params.kind == GiniParams::Kind::conjugate && !conjugate_window_ok(params.b, pair.interval())) {
      rep.verdict = Verdict::indeterminate;
      rep.gini = params;
      rep.detail = "conjugate parameters " + params.describe() +
                   " recovered, but I violates the admissibility window";
      rep.conditions.push_back({"conjugate_window", params.b, 0.0, false,
                                "I must lie inside (exp(-pi/(2b)), exp(pi/(2b)))"});
      return rep;
    }

    // cross-validate the closed form against the pair's own mean
    std::mt19937_64 rng(opts.seed);
    const Interval& I = pair.interval();
    const double inset = 0.05 * I.width();
    std::uniform_real_distribution<double> u(I.lo + inset, I.hi - inset);
    double worst = 0.0;
    for (int s = 0; s < opts.cross_val_points; ++s) {
      std::vector<double> x(static_cast<size_t>(fam.dim()));
      for (auto& xi : x) xi = u(rng);
      const double direct = mean_value(pair, fam, mu, x);
      const double closed = eval_gini_closed(params, fam, mu, x);
      worst = std::max(worst, rel_dev(direct, closed));
    }
    rep.conditions.push_back({"gini_cross_validation", worst, opts.cross_val_tol,
                              worst <= opts.cross_val_tol,
                              "relative gap between the pair's mean and the recovered Gini closed form"});
    if (worst <= opts.cross_val_tol) {
      rep.verdict = Verdict::homogeneous;
      rep.gini = params;
    } else {
      rep.verdict = Verdict::indeterminate;
      rep.gini = params;
      rep.detail = "constant invariants but the recovered Gini mean failed cross-validation";
    }
    return rep;
  }

  const HomogeneityGap gap = scan_for_gap(
      pair.interval(), fam.dim(), [&](std::span<const double> x) { return mean_value(pair, fam, mu, x); },
      15, 4, opts.seed, /*relative=*/false);
  rep.conditions.push_back({"homogeneity_gap", gap.gap, opts.witness_gap, gap.gap > opts.witness_gap,
                            "largest |M(lambda x) - lambda M(x)| over the scan"});
  if (gap.gap > opts.witness_gap) {
    rep.verdict = Verdict::not_homogeneous;
    rep.counterexample = Counterexample{gap.x, gap.lambda, gap.gap};
  } else {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "invariants are not constant but no scaling counterexample was found";
  }
  return rep;
}

DecisionReport classify_homogeneous_qa(const Expr& f, const Interval& I, const MeanFamily& fam,
                                       const Measure& mu, std::span<const double> grid,
                                       const DecideOptions& opts) {
  if (!(I.lo > 0.0)) fail(errc::invalid_argument, "homogeneity classification needs I inside (0, inf)");
  if (!fam.homogeneous()) fail(errc::invalid_argument, "family must be homogeneous");
  check_grid(grid, I, 2);
  for (double x : grid) {
    const Jet jf = f.jet(x);
    if (std::fabs(jf.d1) <= 1e-14 * (1.0 + std::fabs(jf.v)))
      fail(errc::singular, "f' vanishes at grid point x = " + fmt(x));
  }

  DecisionReport rep;
  rep.grid.assign(grid.begin(), grid.end());

  const double x0 = grid[grid.size() / 2];
  const NondegeneracyReport nd = fam.nondegeneracy(mu, x0);
  rep.conditions.push_back({"mt1_vanishing_mass", nd.mt1_mass, 1.0, nd.mt1_ok,
                            "mu-mass of nodes with all centered partials zero at x0"});
  if (!nd.mt1_ok) {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "vanishing-mass condition failed at x0";
    return rep;
  }

  std::vector<double> alpha;
  alpha.reserve(grid.size());
  for (double x : grid) {
    const Jet jf = f.jet(x);
    alpha.push_back(x * jf.d2 / jf.d1);
  }
  const Constancy ca = constancy_of(alpha);
  rep.conditions.push_back({"alpha_constancy", ca.deviation, opts.constancy_tol * (1.0 + std::fabs(ca.mean)),
                            ca.constant(opts.constancy_tol),
                            "max deviation of x*f''(x)/f'(x) from its grid mean"});

  if (ca.constant(opts.constancy_tol)) {
    double p = ca.mean + 1.0;
    if (std::fabs(p) < 1e-9) p = 0.0;  // geometric branch
    std::mt19937_64 rng(opts.seed);
    const double inset = 0.05 * I.width();
    std::uniform_real_distribution<double> u(I.lo + inset, I.hi - inset);
    double worst = 0.0;
    for (int s = 0; s < opts.cross_val_points; ++s) {
      std::vector<double> x(static_cast<size_t>(fam.dim()));
      for (auto& xi : x) xi = u(rng);
      const double direct = eval_quasi_arithmetic(f, I, fam, mu, x);
      const double closed = eval_holder(p, fam, mu, x);
      worst = std::max(worst, rel_dev(direct, closed));
    }
    rep.conditions.push_back({"holder_cross_validation", worst, opts.cross_val_tol,
                              worst <= opts.cross_val_tol,
                              "relative gap between the quasi-arithmetic mean and H_p"});
    if (worst <= opts.cross_val_tol) {
      rep.verdict = Verdict::homogeneous;
      rep.holder_p = p;
    } else {
      rep.verdict = Verdict::indeterminate;
      rep.holder_p = p;
      rep.detail = "constant invariant but the recovered Holder mean failed cross-validation";
    }
    return rep;
  }

  const HomogeneityGap gap = scan_for_gap(
      I, fam.dim(), [&](std::span<const double> x) { return eval_quasi_arithmetic(f, I, fam, mu, x); }, 15,
      4, opts.seed, /*relative=*/false);
  rep.conditions.push_back({"homogeneity_gap", gap.gap, opts.witness_gap, gap.gap > opts.witness_gap,
                            "largest |M(lambda x) - lambda M(x)| over the scan"});
  if (gap.gap > opts.witness_gap) {
    rep.verdict = Verdict::not_homogeneous;
    rep.counterexample = Counterexample{gap.x, gap.lambda, gap.gap};
  } else {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "invariant is not constant but no scaling counterexample was found";
  }
  return rep;
}

Interval ratio_set(const Interval& I) {
  if (!(I.lo > 0.0)) fail(errc::invalid_argument, "ratio set needs I inside (0, inf)");
  return make_interval(I.lo / I.hi, I.hi / I.lo);
}

Interval lambda_section(const Interval& I, double lambda) {
  const Interval ratio = ratio_set(I);
  if (!(lambda > ratio.lo && lambda < ratio.hi))
    fail(errc::domain, "lambda = " + fmt(lambda) + " outside the ratio set (" + fmt(ratio.lo) + ", " +
                           fmt(ratio.hi) + "); the section is empty");
  return make_interval(std::max(I.lo, I.lo / lambda), std::min(I.hi, I.hi / lambda));
}

ScanReport homogeneity_scan(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                            int n_lambda, int n_x, std::uint64_t seed) {
  if (n_lambda < 1 || n_x < 1) fail(errc::invalid_argument, "scan needs positive sample counts");
  ScanReport rep;
  auto mean_at = [&](std::span<const double> x) { return mean_value(pair, fam, mu, x); };

  // the lambda = 1 row, always present
  {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const Interval& I = pair.interval();
    const double inset = 0.05 * I.width();
    std::uniform_real_distribution<double> u(I.lo + inset, I.hi - inset);
    std::vector<double> x(static_cast<size_t>(fam.dim()));
    for (auto& xi : x) xi = u(rng);
    std::vector<double> lx(x);
    for (double& xi : lx) xi *= 1.0;
    rep.lambda_one_residual = std::fabs(mean_at(lx) - 1.0 * mean_at(x));
  }

  const HomogeneityGap best =
      scan_for_gap(pair.interval(), fam.dim(), mean_at, n_lambda, n_x, seed, /*relative=*/true);
  rep.max_residual = std::max(best.gap, 0.0);
  rep.worst_lambda = best.lambda;
  rep.worst_x = best.x;
  rep.samples = n_lambda * n_x;
  return rep;
}

}  // namespace meanlab
