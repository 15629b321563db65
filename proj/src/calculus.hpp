#pragma once

#include <span>

#include "chebyshev.hpp"
#include "family.hpp"
#include "measure.hpp"

namespace meanlab {

// Full diagonal derivative tensors of the mean at x^(d). The second and
// third tensors are symmetric under index permutation, and the first-order
// entries sum to one for the built-in families.
struct DiagonalDerivatives {
  double x = 0.0;
  std::vector<double> first;                             // [i-1]
  std::vector<std::vector<double>> second;               // [i-1][j-1]
  std::vector<std::vector<std::vector<double>>> third;   // [i-1][j-1][l-1], when order >= 3
};

DiagonalDerivatives diagonal_derivatives(const GeneratorPair& pair, const MeanFamily& fam,
                                         const Measure& mu, double x, int order = 3);

// Diagonal partial derivatives of the mean M_{f,g,m;mu} at x^(d), to order
// three, as exact finite sums over the measure nodes. Indices are 1-based.
double diag_d1(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int i);
double diag_d2(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int i, int j);
double diag_d3(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int i, int j,
               int l);

// Central finite difference of the full mean evaluation in the given
// coordinate directions at x^(d). `indices` lists coordinates, one per
// differentiation (repeats allowed), so indices.size() == order. A step
// h <= 0 selects the default: 1e-4*(1+|x|) for order <= 2, 1e-3*(1+|x|)
// for order 3.
double fd_diag(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu, double x, int order,
               std::span<const int> indices, double h = 0.0);

}  // namespace meanlab
