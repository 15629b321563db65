#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "chebyshev.hpp"
#include "decide.hpp"
#include "evaluate.hpp"
#include "expr.hpp"
#include "family.hpp"
#include "measure.hpp"

namespace testsupport {

using namespace meanlab;

inline double rel_gap(double a, double b) {
  return std::fabs(a - b) / (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

struct NamedPair {
  std::string name;
  GeneratorPair pair;
};

// Fixed battery of generator pairs, all in normalized form (g > 0, f/g
// strictly monotone) so both evaluation routes apply.
inline const std::vector<NamedPair>& catalog_pairs() {
  static const std::vector<NamedPair> pairs = [] {
    std::vector<NamedPair> v;
    const Expr one = Expr::constant(1.0);
    const Expr x = Expr::identity();
    v.push_back({"linear", GeneratorPair(x, one, make_interval(0.5, 3.0))});
    v.push_back({"flipped", GeneratorPair(one, x, make_interval(0.5, 3.0))});
    v.push_back({"quad_lin", GeneratorPair(Expr::power(2.0), x, make_interval(0.5, 3.0))});
    v.push_back({"cubic", GeneratorPair(Expr::power(3.0), one, make_interval(0.5, 2.5))});
    v.push_back({"gini_2_1", make_gini_pair(GiniParams::from_roots(2.0, 1.0), make_interval(0.5, 3.0))});
    v.push_back({"gini_m1_2", make_gini_pair(GiniParams::from_roots(-1.0, 2.0), make_interval(0.5, 2.0))});
    v.push_back({"gini_eq_1_5", make_gini_pair(GiniParams::from_roots(1.5, 1.5), make_interval(0.6, 2.4))});
    v.push_back(
        {"gini_conj_1_2", make_gini_pair(GiniParams::conjugate_pair(1.0, 2.0), make_interval(0.9, 1.1))});
    v.push_back({"exp_pair", GeneratorPair(Expr::exp(), one, make_interval(0.25, 2.0))});
    v.push_back({"log_pair", GeneratorPair(Expr::log(), one, make_interval(1.1, 3.0))});
    v.push_back({"trig_pair", GeneratorPair(Expr::sin(), Expr::cos(), make_interval(0.2, 1.2))});
    // a transformed pair that stays normalized: g_new = 0.3 f + g > 0
    v.push_back({"quad_lin_mixed",
                 GeneratorPair(Expr::power(2.0), x, make_interval(0.5, 3.0))
                     .transformed(make_witness(1.0, 0.5, 0.3, 1.0))});
    return v;
  }();
  return pairs;
}

inline MeanFamily wa_family() {
  // phi_1 = t^2, phi_2 = 1 - t^2
  return MeanFamily::weighted_arithmetic(
      {Expr::power(2.0), Expr::affine({{-1.0, Expr::power(2.0)}}, 1.0)});
}

inline std::vector<Measure> unit_measures() {
  return {Measure::two_point(0.3), Measure::two_point(0.7), Measure::uniform_quadrature(24),
          Measure::dirac_mix({{0.1, 0.25}, {0.5, 0.35}, {0.9, 0.4}})};
}

inline std::vector<Measure> label_measures3() {
  return {Measure::counting(3), Measure::labels_weighted({0.2, 0.3, 0.5}),
          Measure::labels_weighted({0.5, 0.25, 0.25}), Measure::labels_weighted({0.1, 0.6, 0.3})};
}

struct Draw {
  const NamedPair* np = nullptr;
  MeanFamily fam = MeanFamily::two_point();
  Measure mu = Measure::two_point(0.3);
  double x = 1.0;
  std::string tag;
};

// catalog pairs x {two_point, projection(3), weighted-arithmetic} x 4
// measures x 5 diagonal points, drawn with a seeded generator
inline std::vector<Draw> make_battery(int n, std::uint64_t seed) {
  const auto& pairs = catalog_pairs();
  const auto unit_mus = unit_measures();
  const auto label_mus = label_measures3();
  std::mt19937_64 rng(seed);
  std::vector<Draw> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    Draw d;
    d.np = &pairs[rng() % pairs.size()];
    const int fam_pick = static_cast<int>(rng() % 3);
    if (fam_pick == 0) {
      d.fam = MeanFamily::two_point();
      d.mu = unit_mus[rng() % unit_mus.size()];
    } else if (fam_pick == 1) {
      d.fam = MeanFamily::projection(3);
      d.mu = label_mus[rng() % label_mus.size()];
    } else {
      d.fam = wa_family();
      d.mu = unit_mus[rng() % unit_mus.size()];
    }
    const auto pts = chebyshev_grid(d.np->pair.interval(), 5);
    d.x = pts[rng() % pts.size()];
    d.tag = d.np->name + "/" + d.fam.describe() + "/" + d.mu.kind() + "/x=" + std::to_string(d.x);
    out.push_back(std::move(d));
  }
  return out;
}

// step-halving Richardson extrapolation of the central differences; kills the
// O(h^2) truncation term so the comparison tolerances have real headroom
inline double fd_richardson(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x,
                            int order, std::span<const int> idx, double h) {
  const double coarse = fd_diag(pair, fam, mu, x, order, idx, h);
  const double fine = fd_diag(pair, fam, mu, x, order, idx, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace testsupport
