#pragma once

#include <cstddef>
#include <vector>

namespace hawkesim {

// Standard normal CDF via the Abramowitz & Stegun 26.2.17 polynomial,
// absolute error below 7.5e-8.
double normal_cdf(double x);

// Two-sided Kolmogorov-Smirnov distance between the sample ECDF and the
// standard normal CDF: max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
double ks_statistic(std::vector<double> sample);

// Smirnov asymptotic critical value sqrt(-ln(level/2)/2) / sqrt(n).
double ks_critical_value(double level, std::size_t n);

struct NormalityReport {
  std::size_t n = 0;
  double ks = 0.0;
  double ks_critical = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  bool pass = false;
};

// KS test against N(0,1) at the given level plus moment sanity bounds
// (|mean| < 0.15, variance in [0.8, 1.25]); the slack absorbs the finite-T
// convergence rate of the limit theorems. Requires at least 100 samples.
NormalityReport normality_check(const std::vector<double>& sample, double level);

}  // namespace hawkesim
