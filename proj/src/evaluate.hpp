#pragma once

#include <span>

#include "chebyshev.hpp"
#include "family.hpp"
#include "measure.hpp"
#include "solve.hpp"

namespace meanlab {

// Implicit route: the unique y in [min m, max m] with
// sum_k w_k D_{f,g}(m(x, t_k), y) = 0.
double eval_implicit(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                     std::span<const double> x);

// Explicit route: (f/g)^{-1}( <f o m> / <g o m> ); needs g > 0 and f/g
// strictly monotone on the working grid.
double eval_explicit(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                     std::span<const double> x);

// f^{-1}( <f o m> ) for strictly monotone f on I.
double eval_quasi_arithmetic(const Expr& f, const Interval& I, const MeanFamily& fam, const Measure& mu,
                             std::span<const double> x);

// f^{-1}( sum_i t_i f(x_i) ) for weights t on the simplex.
double eval_weighted_qa(const Expr& f, const Interval& I, std::span<const double> x,
                        std::span<const double> t);

// Closed Gini forms; for the conjugate variant *conj_denominator (optional)
// receives <m^a cos(b log m)>, the quantity whose positivity the window
// condition guarantees.
double eval_gini_closed(const GiniParams& params, const MeanFamily& fam, const Measure& mu,
                        std::span<const double> x, double* conj_denominator = nullptr);

double eval_holder(double p, const MeanFamily& fam, const Measure& mu, std::span<const double> x);

// Weighted finite-sum specialization; empty weights mean 1/d each.
double eval_gini_discrete(const GiniParams& params, std::span<const double> x,
                          std::span<const double> weights = {});

}  // namespace meanlab
