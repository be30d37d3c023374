#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cdasim::stats {

// --- special functions -----------------------------------------------------

double log_gamma(double x);
// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);
// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
double normal_cdf(double z);

// Student-t distribution.
double student_t_cdf(double t, double df);
// Two-sided critical value: P(|T| <= t) = confidence.
double student_t_quantile_two_sided(double confidence, double df);

// --- estimators and tests --------------------------------------------------

struct MeanCi {
  double mean{0.0};
  double half_width{0.0};
};

// Student-t confidence interval for the mean. Requires n >= 2.
MeanCi mean_ci(std::span<const double> samples, double confidence = 0.95);

// Two-sided Welch (unequal variance) t-test p-value. Requires both n >= 2.
// A zero-variance pair degenerates to an exact-equality test (p = 1 or 0).
double welch_t_test(std::span<const double> a, std::span<const double> b);

struct MannWhitneyResult {
  double u;        // U statistic of the first sample
  double p_value;  // two-sided
  bool exact;      // true if computed by exact enumeration
};

// Two-sided Mann-Whitney U. Exact for small samples (both n < 20), normal
// approximation with tie correction and continuity correction otherwise.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Upper-tail p-value of a chi-square statistic.
double chi_square_p(double statistic, double df);

// One-sample Kolmogorov-Smirnov test against the exponential distribution
// with mean `lambda`; returns the asymptotic two-sided p-value.
double ks_test_exponential(std::span<const double> samples, double lambda);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // sample variance (n-1)

}  // namespace cdasim::stats
