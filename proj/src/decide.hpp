#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebyshev.hpp"
#include "family.hpp"
#include "measure.hpp"

namespace meanlab {

enum class Verdict { equal, not_equal, homogeneous, not_homogeneous, indeterminate };

const char* verdict_name(Verdict v);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct Counterexample {
  std::vector<double> x;
  std::optional<double> lambda;  // homogeneity counterexamples carry the scaling factor
  double gap = 0.0;              // |M_A - M_B| or |M(lambda x) - lambda M(x)| at x
};

struct DecisionReport {
  Verdict verdict = Verdict::indeterminate;
  std::vector<Check> conditions;
  std::optional<EquivalenceWitness> witness;
  std::optional<GiniParams> gini;
  std::optional<double> holder_p;
  std::optional<Counterexample> counterexample;
  std::vector<double> grid;
  std::string detail;

  int exit_status() const { return verdict == Verdict::indeterminate ? 2 : 0; }
};

struct DecideOptions {
  double match_tol = 1e-9;       // Phi/Psi (and f''/f') grid comparison
  double constancy_tol = 1e-8;   // x*Phi, x^2*Psi constancy for the classifiers
  double witness_gap = 1e-7;     // counterexamples must separate means by this much
  double cross_val_tol = 1e-8;   // classifier closed-form cross-check
  int cross_val_points = 20;
  int sample_count = 64;         // counterexample candidates
  std::uint64_t seed = 0;
};

// Equality of two generalized Bajraktarevic means over the same family,
// measure and interval; needs smoothness >= 3 on both pairs.
DecisionReport decide_equality(const GeneratorPair& pairA, const GeneratorPair& pairB,
                               const MeanFamily& fam, const Measure& mu, std::span<const double> grid,
                               const DecideOptions& opts = {});

// Quasi-arithmetic specialization: compares f''/f' with g''/g' and recovers
// g = a*f + b; only the vanishing-mass condition is needed.
DecisionReport decide_equality_qa(const Expr& f, const Expr& g, const Interval& I, const MeanFamily& fam,
                                  const Measure& mu, std::span<const double> grid,
                                  const DecideOptions& opts = {});

// Homogeneity classifier: constant x*Phi and x^2*Psi pin a Cauchy-Euler
// equation whose characteristic roots are the Gini parameters.
DecisionReport classify_homogeneous(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                                    std::span<const double> grid, const DecideOptions& opts = {});

// Quasi-arithmetic homogeneity: constant x*f''/f' maps to the Holder mean H_p
// with p = alpha + 1 (p = 0 is the geometric branch).
DecisionReport classify_homogeneous_qa(const Expr& f, const Interval& I, const MeanFamily& fam,
                                       const Measure& mu, std::span<const double> grid,
                                       const DecideOptions& opts = {});

// I/I = (lo/hi, hi/lo) for I in (0, inf).
Interval ratio_set(const Interval& I);
// I_lambda = I intersect (1/lambda) I; lambda must lie in the interior of I/I.
Interval lambda_section(const Interval& I, double lambda);

struct ScanReport {
  double max_residual = 0.0;  // relative |M(lambda x) - lambda M(x)|
  double worst_lambda = 1.0;
  std::vector<double> worst_x;
  double lambda_one_residual = 0.0;
  int samples = 0;
};

// Direct homogeneity test by sampling lambda over the interior of I/I and x
// over I_lambda^d; the oracle the classifier's verdicts are checked against.
ScanReport homogeneity_scan(const GeneratorPair& pair, const MeanFamily& fam, const Measure& mu,
                            int n_lambda, int n_x, std::uint64_t seed = 0);

}  // namespace meanlab
