#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dws/core.hpp"

// Statistical reference implementations used to validate the samplers.
// Everything here is derived from first principles (enumeration, classical
// test statistics), independent of the protocol code paths it checks.

namespace dws::oracle {

// Unordered sampling-without-replacement distribution over item indices,
// computed by exhaustive enumeration of ordered draws. Probability of an
// ordered draw (i1..is) is the product of w_i / (remaining total weight).
// Feasible for n <= 8.
using SelectionDist = std::map<std::vector<int>, double>;
SelectionDist exact_swor_distribution(const std::vector<double>& weights,
                                      int s);

// Draws keys w_i/t_i for every weight and returns the indices of the s
// largest, ordered by descending key. Ties (probability zero) break toward
// the later index. This is the single-machine reference sampler.
std::vector<int> centralized_key_sampler(const std::vector<double>& weights,
                                         int s, BitSource& src);

// Empirical check of the exponential sum tail: fraction of trials where
// |sum of s Exp(1) draws - s| > eps*s, and the analytic bound 2*exp(-eps^2*s/5).
struct TailCheck {
  double empirical_rate;
  double bound;
  bool within_bound;
};
TailCheck exp_sum_tail_check(int s, double eps, int trials, BitSource& src);

// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

// Quantile of the chi-square distribution with df degrees of freedom.
double chi_square_quantile(int df, double p);

struct ChiSquareResult {
  double statistic;
  int dof;
  double critical;
  bool pass;
};

// Pearson goodness-of-fit of observed counts against expected probabilities.
// Categories are positional; counts and probabilities must align. Throws if
// any expected count falls below 5 (caller must pool such cells first).
// dof = categories - 1; dof 0 passes vacuously.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected_probs,
                               double alpha = 0.001);

// Two-sample homogeneity test on positional counts with the same support.
ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       double alpha = 0.001);

// Kolmogorov-Smirnov statistic of samples against the standard exponential.
double ks_statistic_exp1(std::vector<double> samples);

// One-sided KS acceptance threshold at significance alpha for n samples.
double ks_threshold(std::size_t n, double alpha);

}  // namespace dws::oracle
